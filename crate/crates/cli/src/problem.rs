//! Problem files: schema and conversion into library objects.

use std::str::FromStr;

use dfsets_core::fox::Presentation;
use dfsets_core::jump::Variety;
use dfsets_core::space::{brieskorn_group, brieskorn_invariants, brieskorn_v1, default_h_characters, toric_char_variety, SeifertData, SimplicialComplex};
use dfsets_core::{
    Arrangement, Bounds, CyclotomicScalar, Error, FgAbGroup, Homomorphism, IntMatrix, LaurentPolynomial, Result,
    Subgroup, TorsionCharacter, TranslatedSubgroup,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupInput {
    pub fn build(&self) -> Result<FgAbGroup> {
        FgAbGroup::from_factors(self.rank, &self.torsion)
    }
}

/// An integer, or a rational written as a string `"p/q"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn rational(&self) -> Result<BigRational> {
        match self {
            Number::Int(k) => Ok(BigRational::from_integer(BigInt::from(*k))),
            Number::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetInput {
    pub xi: Vec<Vec<i64>>,
    #[serde(default)]
    pub eta: Option<Vec<Number>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementInput {
    #[serde(default)]
    pub components: Vec<CosetInput>,
    #[serde(default)]
    pub deleted: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub points: Vec<Vec<Number>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermInput {
    pub exp: Vec<i64>,
    pub coeff: Number,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialInput {
    pub terms: Vec<TermInput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricInput {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default = "one")]
    pub degree: i64,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrieskornInput {
    pub exponents: Vec<u64>,
    #[serde(default)]
    pub torsion: Option<Vec<u64>>,
    #[serde(default)]
    pub h_elements: Option<Vec<Vec<Number>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyInput {
    #[serde(default)]
    pub arrangement: Option<ArrangementInput>,
    #[serde(default)]
    pub hypersurface: Option<PolynomialInput>,
    #[serde(default)]
    pub toric: Option<ToricInput>,
    #[serde(default)]
    pub brieskorn: Option<BrieskornInput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationInput {
    pub generators: usize,
    pub relators: Vec<String>,
}

/// One query of a `run` file.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Query {
    Xi { d: u64 },
    Tau { d: u64 },
    GammaCount,
    Fiber { nu_bar: Vec<Vec<i64>> },
    Member { nu: Vec<Vec<i64>> },
    Describe,
    SigmaProbe { nu_bar: Vec<Vec<i64>> },
    Diagnose,
    Toric { i: Option<i64> },
    Brieskorn,
    Fox { codim: Option<usize> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub group: Option<GroupInput>,
    #[serde(default)]
    pub quotient: Option<GroupInput>,
    #[serde(default)]
    pub variety: Option<VarietyInput>,
    #[serde(default)]
    pub presentation: Option<PresentationInput>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

/// Brieskorn data resolved against its homology group.
#[derive(Debug, Clone)]
pub struct BrieskornData {
    pub data: SeifertData,
    pub h_characters: Vec<TorsionCharacter>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub group: Option<FgAbGroup>,
    pub quotient: Option<FgAbGroup>,
    pub variety: Option<Variety>,
    pub toric: Option<(SimplicialComplex, i64)>,
    pub brieskorn: Option<BrieskornData>,
    pub presentation: Option<Presentation>,
    pub queries: Vec<Query>,
}

fn character(h: &FgAbGroup, v: &[Number]) -> Result<TorsionCharacter> {
    TorsionCharacter::new(h, v.iter().map(Number::rational).collect::<Result<_>>()?)
}

fn check_vectors(h: &FgAbGroup, vs: &[Vec<i64>], what: &str) -> Result<()> {
    if let Some(v) = vs.iter().find(|v| v.len() != h.dim()) {
        return Err(Error::Dimension(format!("{what} {v:?} has {} entries, expected {}", v.len(), h.dim())));
    }
    Ok(())
}

fn subgroup(h: &FgAbGroup, gens: &[Vec<i64>], what: &str) -> Result<Subgroup> {
    check_vectors(h, gens, what)?;
    Subgroup::from_i64(h, gens)
}

fn arrangement(h: &FgAbGroup, input: &ArrangementInput) -> Result<Arrangement> {
    let mut w = Arrangement::new(h);
    for c in &input.components {
        let xi = subgroup(h, &c.xi, "component generator")?;
        let eta = match &c.eta {
            Some(v) => character(h, v)?,
            None => TorsionCharacter::trivial(h),
        };
        w = w.with_component(TranslatedSubgroup::new(xi, eta)?)?;
    }
    for d in &input.deleted {
        w = w.with_deleted(subgroup(h, d, "deleted-subgroup generator")?)?;
    }
    for p in &input.points {
        w = w.with_point(character(h, p)?)?;
    }
    Ok(w)
}

fn polynomial(h: &FgAbGroup, input: &PolynomialInput) -> Result<LaurentPolynomial> {
    let mut f = LaurentPolynomial::zero(h);
    for t in &input.terms {
        if t.exp.len() != h.dim() {
            return Err(Error::Dimension(format!("exponent {:?} has the wrong length", t.exp)));
        }
        f.add_term(t.exp.clone(), CyclotomicScalar::from_rational(1, t.coeff.rational()?))?;
    }
    Ok(f)
}

fn same_group(given: &Option<FgAbGroup>, derived: &FgAbGroup) -> Result<()> {
    match given {
        Some(g) if g != derived => Err(Error::Input(format!("group {g} does not match the derived group {derived}"))),
        _ => Ok(()),
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("problem file: {e}")))
    }

    pub fn validate(&self, bounds: &Bounds) -> Result<Problem> {
        let mut group = self.group.as_ref().map(GroupInput::build).transpose()?;
        let quotient = self.quotient.as_ref().map(GroupInput::build).transpose()?;
        let mut variety = None;
        let mut toric = None;
        let mut brieskorn = None;
        if let Some(v) = &self.variety {
            let families = [v.arrangement.is_some() || v.hypersurface.is_some(), v.toric.is_some(), v.brieskorn.is_some()];
            if families.iter().filter(|&&x| x).count() > 1 {
                return Err(Error::Input("a variety is an arrangement/hypersurface, a toric complex, or a Brieskorn manifold".into()));
            }
            if let Some(t) = &v.toric {
                let l = SimplicialComplex::new(t.vertices, t.facets.clone())?;
                let derived = FgAbGroup::free(t.vertices);
                same_group(&group, &derived)?;
                group = Some(derived);
                variety = Some(Variety::from(toric_char_variety(&l, t.degree, bounds)?));
                toric = Some((l, t.degree));
            } else if let Some(binput) = &v.brieskorn {
                let data = brieskorn_invariants(&binput.exponents)?;
                let h = brieskorn_group(&data, binput.torsion.as_deref())?;
                same_group(&group, &h)?;
                let hs = match &binput.h_elements {
                    Some(list) => list.iter().map(|c| character(&h, c)).collect::<Result<Vec<_>>>()?,
                    None => default_h_characters(&data, &h)?,
                };
                if data.genus > 0 {
                    variety = Some(Variety::from(brieskorn_v1(&data, &h, &hs)?));
                }
                group = Some(h);
                brieskorn = Some(BrieskornData { data, h_characters: hs });
            } else {
                let h = group
                    .clone()
                    .ok_or_else(|| Error::Input("an arrangement or hypersurface needs \"group\"".into()))?;
                let arr = match &v.arrangement {
                    Some(a) => arrangement(&h, a)?,
                    None => Arrangement::new(&h),
                };
                let hypersurface = v.hypersurface.as_ref().map(|p| polynomial(&h, p)).transpose()?;
                variety = Some(Variety { arrangement: arr, hypersurface });
            }
        }
        let presentation = self
            .presentation
            .as_ref()
            .map(|p| {
                let rels: Vec<&str> = p.relators.iter().map(String::as_str).collect();
                Presentation::parse(p.generators, &rels)
            })
            .transpose()?;
        Ok(Problem {
            group,
            quotient,
            variety,
            toric,
            brieskorn,
            presentation,
            queries: self.queries.clone(),
        })
    }
}

/// Parses `"1,1;1,0"` into rows.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Input(format!("bad matrix entry {x:?} in {s:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Input(format!("ragged matrix {s:?}")));
    }
    Ok(rows)
}

pub fn homomorphism(h: &FgAbGroup, a: &FgAbGroup, rows: &[Vec<i64>]) -> Result<Homomorphism> {
    if rows.len() != a.dim() || rows.iter().any(|r| r.len() != h.dim()) {
        return Err(Error::Dimension(format!(
            "a map {h} → {a} needs a {}x{} matrix",
            a.dim(),
            h.dim()
        )));
    }
    let nu = Homomorphism::new(h, a, IntMatrix::from_rows(rows))?;
    if !nu.is_epimorphism() {
        return Err(Error::Input(format!("the map {rows:?} is not onto {a}")));
    }
    Ok(nu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_and_rationals() {
        assert_eq!(parse_matrix("1,1;1,0").unwrap(), vec![vec![1, 1], vec![1, 0]]);
        assert!(parse_matrix("1,1;1").is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(ProblemFile::parse(r#"{"group": {"rank": 1}, "extra": 1}"#).is_err());
        let p = ProblemFile::parse(r#"{"group": {"rank": 2}, "queries": [{"kind": "xi", "d": 2}]}"#).unwrap();
        assert!(matches!(p.queries[0], Query::Xi { d: 2 }));
    }
}
