//! Transcribed reference data: monomial lists and named polynomials.
//!
//! A fixture file holds records separated by blank lines. Each record starts
//! with a header `# name=<id> kind=<poly|monos> k=<k> d=<d> [weight=a,b,c]`
//! followed by one monomial per line in tuple form `[e1,e2,...]`.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Polynomial,
    Monomials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub k: usize,
    pub d: u32,
    pub weight: Option<WeightVector>,
    pub monomials: Vec<Monomial>,
}

impl Fixture {
    /// The payload read as a polynomial (the sum of its monomials).
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_monomials(self.k, self.monomials.iter().cloned()).expect("k checked on load")
    }
}

pub fn load_fixtures(path: impl AsRef<Path>) -> Result<Vec<Fixture>> {
    let text = std::fs::read_to_string(path)?;
    parse_fixtures(&text)
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out: Vec<Fixture> = Vec::new();
    let mut current: Option<Fixture> = None;
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            out.extend(current.take());
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            out.extend(current.take());
            current = Some(parse_header(header, line_no)?);
            continue;
        }
        let fx = current.as_mut().ok_or_else(|| Error::Fixture {
            name: String::new(),
            line: line_no,
            msg: "monomial outside a record".into(),
        })?;
        let err = |msg: String| Error::Fixture {
            name: fx.name.clone(),
            line: line_no,
            msg,
        };
        let m = Monomial::parse_tuple(line).map_err(|e| err(e.to_string()))?;
        if m.k() != fx.k {
            return Err(err(format!("{} variables, header says {}", m.k(), fx.k)));
        }
        if m.degree() != fx.d {
            return Err(err(format!("degree {}, header says {}", m.degree(), fx.d)));
        }
        if fx.kind == FixtureKind::Monomials && fx.monomials.contains(&m) {
            return Err(err(format!("duplicate monomial {}", m.to_tuple_string())));
        }
        fx.monomials.push(m);
    }
    out.extend(current);
    for fx in &out {
        if !seen.insert(fx.name.clone()) {
            return Err(Error::Fixture {
                name: fx.name.clone(),
                line: 0,
                msg: "fixture defined twice".into(),
            });
        }
    }
    Ok(out)
}

fn parse_header(header: &str, line: usize) -> Result<Fixture> {
    let mut name = None;
    let mut kind = None;
    let mut k = None;
    let mut d = None;
    let mut weight = None;
    let err = |name: &Option<String>, msg: String| Error::Fixture {
        name: name.clone().unwrap_or_default(),
        line,
        msg,
    };
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(&name, format!("malformed header field `{field}`")))?;
        match key {
            "name" => name = Some(value.to_string()),
            "kind" => {
                kind = Some(match value {
                    "poly" => FixtureKind::Polynomial,
                    "monos" => FixtureKind::Monomials,
                    _ => return Err(err(&name, format!("unknown kind `{value}`"))),
                })
            }
            "k" => k = Some(value.parse::<usize>().map_err(|e| err(&name, e.to_string()))?),
            "d" => d = Some(value.parse::<u32>().map_err(|e| err(&name, e.to_string()))?),
            "weight" => weight = Some(value.parse::<WeightVector>().map_err(|e| err(&name, e.to_string()))?),
            _ => return Err(err(&name, format!("unknown header field `{key}`"))),
        }
    }
    let missing = |what: &str| err(&name, format!("header lacks `{what}`"));
    let k = k.ok_or_else(|| missing("k"))?;
    if k == 0 {
        return Err(err(&name, "k must be positive".into()));
    }
    let kind = kind.ok_or_else(|| missing("kind"))?;
    let d = d.ok_or_else(|| missing("d"))?;
    let name = name.clone().ok_or_else(|| missing("name"))?;
    Ok(Fixture {
        name,
        kind,
        k,
        d,
        weight,
        monomials: Vec::new(),
    })
}

/// Looks a fixture up by name.
pub fn find<'a>(fixtures: &'a [Fixture], name: &str) -> Option<&'a Fixture> {
    fixtures.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records() {
        let text = "# name=a kind=monos k=2 d=3\n[0,3]\n[1,2]\n\n# name=b kind=poly k=2 d=3 weight=1,1\n[2,1]\n[1,2]\n";
        let fx = parse_fixtures(text).unwrap();
        assert_eq!(fx.len(), 2);
        assert_eq!(fx[0].monomials.len(), 2);
        assert_eq!(fx[1].weight, Some(WeightVector::new(vec![1, 1])));
        assert_eq!(fx[1].polynomial(), Polynomial::parse("x1^2 x2 + x1 x2^2", 2).unwrap());
        assert_eq!(find(&fx, "b").unwrap().kind, FixtureKind::Polynomial);
    }

    #[test]
    fn empty_input() {
        assert!(parse_fixtures("").unwrap().is_empty());
    }

    #[test]
    fn errors_name_fixture_and_line() {
        let e = parse_fixtures("# name=a kind=monos k=2 d=3\n[0,3]\n[1,1]\n").unwrap_err();
        assert_eq!(
            e,
            Error::Fixture {
                name: "a".into(),
                line: 3,
                msg: "degree 2, header says 3".into()
            }
        );
        let e = parse_fixtures("# name=a kind=monos k=2 d=3\n[0,3]\n[0,3]\n").unwrap_err();
        assert!(matches!(e, Error::Fixture { line: 3, .. }));
        let e = parse_fixtures("# name=a kind=monos k=2 d=3\n[0,x]\n").unwrap_err();
        assert!(matches!(e, Error::Fixture { line: 2, .. }));
        assert!(parse_fixtures("[1,2]\n").is_err());
        assert!(parse_fixtures("# name=a kind=set k=2 d=3\n").is_err());
    }
}
