//! Named checks over computed bases, invariants and the reference fixtures.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cache::BasisCache;
use crate::equivariance::{
    apply_substitution, gl_invariants_of, p_indices, p_map, rho, sf_tilde_of, sigma_invariants_of, InvariantReport,
};
use crate::error::{Error, Result};
use crate::fixtures::{find, Fixture};
use crate::hit::{hit_space_in, occurring_weights, singer_filter, FullBasis, MonomialIndex, QuotientBasis};
use crate::linalg::EchelonSpace;
use crate::poly::{Monomial, MonomialOrder, Polynomial, WeightVector};
use crate::steenrod::all_square_images;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skip",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Smoke,
    Degree20,
    Degree30,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Suite::Smoke),
            "degree20" => Ok(Suite::Degree20),
            "degree30" => Ok(Suite::Degree30),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

struct Outcome {
    computed: String,
    ok: bool,
    counterexample: Option<String>,
}

fn equal<T: PartialEq + Display>(computed: T, expected: &T) -> Outcome {
    Outcome {
        ok: computed == *expected,
        computed: computed.to_string(),
        counterexample: None,
    }
}

fn holds(failure: Option<String>) -> Outcome {
    Outcome {
        computed: if failure.is_some() { "false" } else { "true" }.into(),
        ok: failure.is_none(),
        counterexample: failure,
    }
}

struct Runner<'a> {
    fixtures: Option<&'a [Fixture]>,
    out: Vec<VerificationResult>,
}

impl<'a> Runner<'a> {
    fn run(&mut self, check: impl Into<String>, expected: impl Display, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (status, computed, counterexample) = match f() {
            Ok(o) => (if o.ok { Status::Pass } else { Status::Fail }, o.computed, o.counterexample),
            Err(e) => (Status::Fail, format!("error: {e}"), None),
        };
        self.out.push(VerificationResult {
            check: check.into(),
            status,
            expected: expected.to_string(),
            computed,
            counterexample,
            elapsed: start.elapsed(),
        });
    }

    /// Runs `f` with the named fixtures, or records the check as skipped.
    fn with_fixtures(
        &mut self,
        check: impl Into<String>,
        expected: impl Display,
        names: &[&str],
        f: impl FnOnce(&[&Fixture]) -> Result<Outcome>,
    ) {
        let found: Option<Vec<&Fixture>> = names
            .iter()
            .map(|n| self.fixtures.and_then(|fx| find(fx, n)))
            .collect();
        match found {
            Some(fx) => self.run(check, expected, || f(&fx)),
            None => {
                let missing: Vec<&str> = names
                    .iter()
                    .copied()
                    .filter(|n| self.fixtures.and_then(|fx| find(fx, n)).is_none())
                    .collect();
                self.out.push(VerificationResult {
                    check: check.into(),
                    status: Status::Skipped,
                    expected: expected.to_string(),
                    computed: format!("missing fixture {}", missing.join(", ")),
                    counterexample: None,
                    elapsed: Duration::ZERO,
                });
            }
        }
    }
}

fn full_basis(cache: Option<&BasisCache>, k: usize, d: u32) -> Result<Arc<FullBasis>> {
    let b = match cache {
        Some(c) => c.get_or_compute(k, d, MonomialOrder::WeightLex)?,
        None => FullBasis::compute(k, d, MonomialOrder::WeightLex)?,
    };
    Ok(Arc::new(b))
}

fn w(s: &str) -> WeightVector {
    s.parse().expect("weight literal")
}

fn set_difference(computed: &[Monomial], expected: &[Monomial]) -> Option<String> {
    let a: BTreeSet<&Monomial> = computed.iter().collect();
    let b: BTreeSet<&Monomial> = expected.iter().collect();
    if let Some(m) = a.difference(&b).next() {
        return Some(format!("computed but not listed: {}", m.to_tuple_string()));
    }
    b.difference(&a)
        .next()
        .map(|m| format!("listed but not computed: {}", m.to_tuple_string()))
}

/// First generator index `j` with `rho_j(f) + f` not zero in `qb`.
fn rho_failure(qb: &QuotientBasis, f: &Polynomial, upto: usize) -> Result<Option<String>> {
    for j in 1..=upto {
        let moved = apply_substitution(&rho(j, qb.k())?, f)?.add(f)?;
        if !qb.reduce_class(&moved)?.is_zero() {
            return Ok(Some(format!("rho_{j}")));
        }
    }
    Ok(None)
}

/// Whether the classes of `polys` span exactly the space of `report`.
pub fn spans_exactly(
    report: &InvariantReport,
    qb: &QuotientBasis,
    polys: &[(String, Polynomial)],
) -> Result<Option<String>> {
    let mut theirs = EchelonSpace::new(qb.dim());
    for (name, f) in polys {
        if !report.spans(qb, f)? {
            return Ok(Some(format!("{name} lies outside the computed span")));
        }
        theirs.insert(&qb.reduce_class(f)?.into_bits())?;
    }
    if theirs.rank() != report.dimension {
        return Ok(Some(format!(
            "listed classes span dimension {}, computed {}",
            theirs.rank(),
            report.dimension
        )));
    }
    Ok(None)
}

fn polys(fx: &[&Fixture]) -> Vec<(String, Polynomial)> {
    fx.iter().map(|f| (f.name.clone(), f.polynomial())).collect()
}

fn singer_failure(qb: &QuotientBasis) -> Result<Option<String>> {
    for m in qb.candidates() {
        if singer_filter(m, qb.k()) && !qb.reduce_class(&Polynomial::from_monomial(m.clone()))?.is_zero() {
            return Ok(Some(m.to_tuple_string()));
        }
    }
    Ok(None)
}

pub fn verify(suite: Suite, fixtures: Option<&[Fixture]>, cache: Option<&BasisCache>) -> Vec<VerificationResult> {
    let mut r = Runner { fixtures, out: Vec::new() };
    if matches!(suite, Suite::Smoke | Suite::All) {
        smoke(&mut r);
    }
    if matches!(suite, Suite::Degree20 | Suite::All) {
        degree20(&mut r, cache);
    }
    if matches!(suite, Suite::Degree30 | Suite::All) {
        degree30(&mut r, cache);
    }
    r.out
}

fn smoke(r: &mut Runner) {
    r.run("all Sq^j span = Sq^(2^s) span, k <= 3, d <= 10", true, || {
        for k in 1..=3 {
            for d in 1..=10 {
                let idx = MonomialIndex::new(k, d, MonomialOrder::WeightLex);
                let mut oracle = EchelonSpace::new(idx.len());
                for f in all_square_images(k, d) {
                    oracle.insert(&idx.vector(&f)?)?;
                }
                if oracle != hit_space_in(&idx)? {
                    return Ok(holds(Some(format!("k={k} d={d}"))));
                }
            }
        }
        Ok(holds(None))
    });
    r.run("dim QP_k independent of order, k <= 3, d <= 10", true, || {
        for k in 1..=3 {
            for d in 0..=10 {
                let a = FullBasis::compute(k, d, MonomialOrder::WeightLex)?.dim();
                let b = FullBasis::compute(k, d, MonomialOrder::Lex)?.dim();
                if a != b {
                    return Ok(holds(Some(format!("k={k} d={d}: {a} vs {b}"))));
                }
            }
        }
        Ok(holds(None))
    });
    r.run("dim QP2_3", 3, || {
        Ok(equal(FullBasis::compute(2, 3, MonomialOrder::WeightLex)?.dim(), &3))
    });
    r.run("dim (QP2_3)^GL2", 1, || {
        let qb = QuotientBasis::from_full(full_basis(None, 2, 3)?);
        Ok(equal(gl_invariants_of(&qb)?.dimension, &1))
    });
}

fn degree20(r: &mut Runner, cache: Option<&BasisCache>) {
    let (full4, full5) = match (full_basis(cache, 4, 20), full_basis(cache, 5, 20)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.run("degree 20 bases", "computed", || Err(e));
            return;
        }
    };
    let b4 = QuotientBasis::from_full(full4.clone());
    let b5 = QuotientBasis::from_full(full5.clone());
    let weights = [w("4,2,1,1"), w("4,2,3"), w("4,4,2")];
    let wq5: Vec<QuotientBasis> = weights
        .iter()
        .map(|x| QuotientBasis::with_weight(full5.clone(), x).expect("degree 20 weight"))
        .collect();
    let wq4: Vec<QuotientBasis> = weights
        .iter()
        .map(|x| QuotientBasis::with_weight(full4.clone(), x).expect("degree 20 weight"))
        .collect();

    r.run("dim QP4_20", 55, || Ok(equal(b4.dim(), &55)));
    r.with_fixtures("B4(20) = fixture B4_20", true, &["B4_20"], |fx| {
        Ok(holds(set_difference(b4.admissible(), &fx[0].monomials)))
    });
    r.run("dim QP5_20", 641, || Ok(equal(b5.dim(), &641)));
    r.run("weights of degree 20", "(4,2,1,1) (4,2,3) (4,4,2)", || {
        let got: Vec<String> = occurring_weights(&b5).iter().map(|x| x.to_string()).collect();
        Ok(equal(got.join(" "), &"(4,2,1,1) (4,2,3) (4,4,2)".to_string()))
    });
    r.run("|B5^0(20)|", 275, || Ok(equal(b5.split_b0_plus().0.len(), &275)));

    let dims = [450, 70, 121];
    let b0 = [225, 20, 30];
    let plus_names = ["B5_plus_20_w4211", "B5_plus_20_w423", "B5_plus_20_w442"];
    for i in 0..3 {
        let q = &wq5[i];
        let wt = &weights[i];
        r.run(format!("dim QP5{wt}"), dims[i], || Ok(equal(q.dim(), &dims[i])));
        r.run(format!("|B5^0{wt}|"), b0[i], || Ok(equal(q.split_b0_plus().0.len(), &b0[i])));
        r.with_fixtures(format!("B5^+{wt} = fixture {}", plus_names[i]), true, &[plus_names[i]], |fx| {
            Ok(holds(set_difference(&q.split_b0_plus().1, &fx[0].monomials)))
        });
    }

    let sigma_dims = [7, 3, 3];
    let sigma_fx: [&[&str]; 3] = [&["h1", "h2", "h3", "h4", "h5", "h6", "h7"], &["h8", "h9", "h10"], &["h11", "h12", "h13"]];
    let gl_dims = [0, 1, 0];
    let sf_dims = [10, 1, 0];
    let sf_fx: [&[&str]; 3] = [&["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9", "g10"], &["g11"], &[]];
    for i in 0..3 {
        let q = &wq5[i];
        let wt = &weights[i];
        let sigma = sigma_invariants_of(q);
        let gl = gl_invariants_of(q);
        let sf = sf_tilde_of(q, &wq4[i]);
        r.run(format!("dim QP5{wt}^Sigma5"), sigma_dims[i], || Ok(equal(sigma.clone()?.dimension, &sigma_dims[i])));
        r.with_fixtures(
            format!("QP5{wt}^Sigma5 = span({})", sigma_fx[i].join(",")),
            true,
            sigma_fx[i],
            |fx| Ok(holds(spans_exactly(sigma.as_ref().map_err(Clone::clone)?, q, &polys(fx))?)),
        );
        r.run(format!("dim QP5{wt}^GL5"), gl_dims[i], || Ok(equal(gl.clone()?.dimension, &gl_dims[i])));
        r.run(format!("dim SF5~{wt}"), sf_dims[i], || Ok(equal(sf.clone()?.dimension, &sf_dims[i])));
        if !sf_fx[i].is_empty() {
            r.with_fixtures(
                format!("SF5~{wt} = span({})", sf_fx[i].join(",")),
                true,
                sf_fx[i],
                |fx| Ok(holds(spans_exactly(sf.as_ref().map_err(Clone::clone)?, q, &polys(fx))?)),
            );
        }
    }
    r.with_fixtures("QP5(4,2,3)^GL5 = span(h10)", true, &["h10"], |fx| {
        Ok(holds(spans_exactly(&gl_invariants_of(&wq5[1])?, &wq5[1], &polys(fx))?))
    });

    let g_names = ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9", "g10"];
    r.with_fixtures("p_(i;I)(g_u) hit in P4, u <= 10", true, &g_names, |fx| {
        for f in fx {
            for (i, set) in p_indices(5) {
                let image = apply_substitution(&p_map(i, &set, 5)?, &f.polynomial())?;
                if !b4.reduce_class(&image)?.is_zero() {
                    return Ok(holds(Some(format!("{} under p({i};{set:?})", f.name))));
                }
            }
        }
        Ok(holds(None))
    });
    r.with_fixtures("p_(i;I)(g11) = 0 in QP4(4,2,3)", true, &["g11"], |fx| {
        for (i, set) in p_indices(5) {
            let image = apply_substitution(&p_map(i, &set, 5)?, &fx[0].polynomial())?;
            if !wq4[1].reduce_class(&image)?.is_zero() {
                return Ok(holds(Some(format!("g11 under p({i};{set:?})"))));
            }
        }
        Ok(holds(None))
    });
    r.with_fixtures("h10 = g11", true, &["h10", "g11"], |fx| {
        Ok(holds((fx[0].polynomial() != fx[1].polynomial()).then(|| "polynomials differ".into())))
    });
    r.with_fixtures("h0 + h10 + p hit", true, &["h0", "h10", "p"], |fx| {
        let sum = fx[0].polynomial().add(&fx[1].polynomial())?.add(&fx[2].polynomial())?;
        Ok(holds((!b5.reduce_class(&sum)?.is_zero()).then(|| "nonzero class".into())))
    });

    let gl = gl_invariants_of(&b5);
    r.run("dim (QP5_20)^GL5", 1, || Ok(equal(gl.clone()?.dimension, &1)));
    r.with_fixtures("(QP5_20)^GL5 = span(p)", true, &["p"], |fx| {
        Ok(holds(spans_exactly(gl.as_ref().map_err(Clone::clone)?, &b5, &polys(fx))?))
    });
    r.with_fixtures("rho_j(p) + p hit, j <= 5", true, &["p"], |fx| {
        Ok(holds(rho_failure(&b5, &fx[0].polynomial(), 5)?))
    });
    r.run("Singer filter sound at (5,20)", true, || Ok(holds(singer_failure(&b5)?)));
}

fn degree30(r: &mut Runner, cache: Option<&BasisCache>) {
    let full = match full_basis(cache, 5, 30) {
        Ok(b) => b,
        Err(e) => {
            r.run("degree 30 basis", "computed", || Err(e));
            return;
        }
    };
    let b = QuotientBasis::from_full(full.clone());
    r.run("dim QP5_30", 840, || Ok(equal(b.dim(), &840)));
    r.run("weights of degree 30", "(2,2,2,2) (2,4,3,1) (4,3,3,1)", || {
        let got: Vec<String> = occurring_weights(&b).iter().map(|x| x.to_string()).collect();
        Ok(equal(got.join(" "), &"(2,2,2,2) (2,4,3,1) (4,3,3,1)".to_string()))
    });
    let q2222 = QuotientBasis::with_weight(full.clone(), &w("2,2,2,2")).expect("degree 30 weight");
    let q2431 = QuotientBasis::with_weight(full.clone(), &w("2,4,3,1")).expect("degree 30 weight");
    let q4331 = QuotientBasis::with_weight(full.clone(), &w("4,3,3,1")).expect("degree 30 weight");
    r.run("dim QP5(2,4,3,1)", 1, || Ok(equal(q2431.dim(), &1)));
    r.run("sum of weight dimensions, degree 30", 840, || {
        Ok(equal(q2222.dim() + q2431.dim() + q4331.dim(), &840))
    });

    let sigma = sigma_invariants_of(&q2222);
    r.run("dim QP5(2,2,2,2)^Sigma5", 9, || Ok(equal(sigma.clone()?.dimension, &9)));
    let p_names = ["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9"];
    r.with_fixtures("QP5(2,2,2,2)^Sigma5 = span(p1..p9)", true, &p_names, |fx| {
        Ok(holds(spans_exactly(sigma.as_ref().map_err(Clone::clone)?, &q2222, &polys(fx))?))
    });
    r.run("dim QP5(4,3,3,1)^GL5", 0, || Ok(equal(gl_invariants_of(&q4331)?.dimension, &0)));

    let gl = gl_invariants_of(&b);
    r.run("dim (QP5_30)^GL5", 1, || Ok(equal(gl.clone()?.dimension, &1)));
    r.with_fixtures("(QP5_30)^GL5 = span(q)", true, &["q"], |fx| {
        Ok(holds(spans_exactly(gl.as_ref().map_err(Clone::clone)?, &b, &polys(fx))?))
    });
    r.with_fixtures("rho_j(q) + q hit, j <= 5", true, &["q"], |fx| {
        Ok(holds(rho_failure(&b, &fx[0].polynomial(), 5)?))
    });
    let mut names = vec!["q", "p0"];
    names.extend(p_names);
    r.with_fixtures("q = x1^3x2^5x3^6x4^6x5^10 + p0 + ... + p9 mod hit", true, &names, |fx| {
        let mut sum = Polynomial::from_monomial(Monomial::new(vec![3, 5, 6, 6, 10])?);
        for f in fx {
            sum.add_assign(&f.polynomial())?;
        }
        Ok(holds((!b.reduce_class(&sum)?.is_zero()).then(|| "nonzero class".into())))
    });
    r.with_fixtures("rho_j(x1^3x2^5x3^6x4^6x5^10 + p0) fixed, j < 5", true, &["p0"], |fx| {
        let f = fx[0].polynomial().add(&Polynomial::from_monomial(Monomial::new(vec![3, 5, 6, 6, 10])?))?;
        Ok(holds(rho_failure(&b, &f, 4)?))
    });
    r.run("Singer filter sound at (5,30)", true, || Ok(holds(singer_failure(&b)?)));
}

pub fn report(results: &[VerificationResult], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(results).expect("results serialize") + "\n",
        Format::Text => {
            let mut out = String::new();
            for res in results {
                out.push_str(&format!(
                    "[{}] {} = {} (expected {})",
                    res.status, res.check, res.computed, res.expected
                ));
                if let Some(c) = &res.counterexample {
                    out.push_str(&format!("  counterexample: {c}"));
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn exit_code(results: &[VerificationResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_suite_passes() {
        let res = verify(Suite::Smoke, None, None);
        assert!(!res.is_empty());
        assert!(res.iter().all(|r| r.status == Status::Pass), "{}", report(&res, Format::Text));
        assert_eq!(exit_code(&res), 0);
    }

    #[test]
    fn empty_report() {
        assert_eq!(report(&[], Format::Text), "");
        assert_eq!(report(&[], Format::Json).trim(), "[]");
    }

    #[test]
    fn missing_fixtures_are_skipped() {
        let mut r = Runner { fixtures: None, out: Vec::new() };
        r.with_fixtures("needs p", true, &["p"], |_| Ok(holds(None)));
        assert_eq!(r.out[0].status, Status::Skipped);
        assert_eq!(exit_code(&r.out), 0);
    }

    #[test]
    fn failures_set_exit_code() {
        let mut r = Runner { fixtures: None, out: Vec::new() };
        r.run("one", 1, || Ok(equal(2, &1)));
        r.run("err", 1, || Err(Error::Invalid("boom".into())));
        assert!(r.out.iter().all(|x| x.status == Status::Fail));
        assert_eq!(exit_code(&r.out), 1);
        assert!(report(&r.out, Format::Text).contains("[fail] one = 2 (expected 1)"));
    }
}
