//! JSON documents with exact rationals written as `"p/q"` strings, and CSV
//! report tables.
//!
//! A document's `index` is the weight sum `t` for weight laws and test values,
//! and the level `ℓ` for level profiles and level coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::grid;
use crate::momentlp::LpResult;
use crate::symdist::{LevelProfile, SymmetricDist, WeightPmf};
use crate::symtest::{LevelCoeffs, SymmetricTest};
use crate::verify::VerdictReport;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Repr {
    WeightPmf,
    LevelProfile,
    TestValues,
    LevelCoeffs,
}

impl Repr {
    fn indexed_by_t(self) -> bool {
        matches!(self, Repr::WeightPmf | Repr::TestValues)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub index: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub n: usize,
    pub repr: Repr,
    pub entries: Vec<Entry>,
}

impl Document {
    fn build(n: usize, repr: Repr, values: &[Rational]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, v)| Entry {
                index: if repr.indexed_by_t() { grid::weight_sum(n, i) } else { i as i64 },
                value: format_rational(v),
            })
            .collect();
        Document { n, repr, entries }
    }

    pub fn from_pmf(pmf: &WeightPmf) -> Self {
        Self::build(pmf.n(), Repr::WeightPmf, pmf.probs())
    }

    pub fn from_profile(profile: &LevelProfile) -> Self {
        Self::build(profile.n(), Repr::LevelProfile, profile.eps())
    }

    pub fn from_test(test: &SymmetricTest) -> Self {
        Self::build(test.n(), Repr::TestValues, test.values())
    }

    pub fn from_coeffs(coeffs: &LevelCoeffs) -> Self {
        Self::build(coeffs.n(), Repr::LevelCoeffs, coeffs.coeffs())
    }

    /// Dense values in storage order; missing indices are zero.
    pub fn values(&self) -> Result<Vec<Rational>> {
        let n = self.n;
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut seen = BTreeMap::new();
        for e in &self.entries {
            let pos = if self.repr.indexed_by_t() {
                grid::index(n, e.index)?
            } else {
                usize::try_from(e.index).ok().filter(|&l| l <= n).ok_or(Error::OutOfRange {
                    what: "level",
                    value: e.index,
                    n,
                })?
            };
            if seen.insert(pos, parse_rational(&e.value)?).is_some() {
                return Err(Error::Parse(format!("duplicate index {}", e.index)));
            }
        }
        Ok((0..=n).map(|i| seen.remove(&i).unwrap_or_default()).collect())
    }

    fn expect(&self, repr: Repr) -> Result<()> {
        if self.repr != repr {
            return Err(Error::Parse(format!("expected repr {repr:?}, found {:?}", self.repr)));
        }
        Ok(())
    }

    pub fn to_pmf(&self) -> Result<WeightPmf> {
        self.expect(Repr::WeightPmf)?;
        WeightPmf::new(self.n, self.values()?)
    }

    pub fn to_profile(&self) -> Result<LevelProfile> {
        self.expect(Repr::LevelProfile)?;
        LevelProfile::new(self.n, self.values()?)
    }

    pub fn to_test(&self) -> Result<SymmetricTest> {
        self.expect(Repr::TestValues)?;
        SymmetricTest::new(self.n, self.values()?)
    }

    pub fn to_coeffs(&self) -> Result<LevelCoeffs> {
        self.expect(Repr::LevelCoeffs)?;
        LevelCoeffs::new(self.n, self.values()?)
    }

    /// A distribution from either a weight law or a level profile.
    pub fn to_dist(&self) -> Result<SymmetricDist> {
        match self.repr {
            Repr::WeightPmf => Ok(SymmetricDist::from_pmf(self.to_pmf()?)),
            Repr::LevelProfile => SymmetricDist::from_profile(self.to_profile()?),
            other => Err(Error::Parse(format!("{other:?} does not describe a distribution"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpDocument {
    pub optimum: String,
    pub witness: Document,
    pub basis: Vec<usize>,
    pub dual: Vec<String>,
    pub certified: bool,
}

impl LpDocument {
    pub fn from_result(res: &LpResult) -> Self {
        LpDocument {
            optimum: format_rational(&res.optimum),
            witness: Document::from_pmf(&res.witness),
            basis: res.basis.clone(),
            dual: res.dual.iter().map(format_rational).collect(),
            certified: res.certified,
        }
    }

    pub fn to_result(&self) -> Result<LpResult> {
        Ok(LpResult {
            optimum: parse_rational(&self.optimum)?,
            witness: self.witness.to_pmf()?,
            basis: self.basis.clone(),
            dual: self.dual.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            certified: self.certified,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn reports_to_json(reports: &[VerdictReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// One row per check: `claim,params,check,lhs,relation,rhs,slack,holds,pass`.
pub fn reports_to_csv(reports: &[VerdictReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(["claim", "params", "check", "lhs", "relation", "rhs", "slack", "holds", "pass"]).map_err(err)?;
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|p| format!("{}={}", p.name, p.value)).collect();
        let params = params.join(";");
        for c in &r.checks {
            w.write_record([
                r.claim.as_str(),
                params.as_str(),
                c.name.as_str(),
                &c.lhs.to_string(),
                c.relation.symbol(),
                &c.rhs.to_string(),
                &c.slack.to_string(),
                &c.holds.to_string(),
                &r.pass.to_string(),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

/// Writes rows of already-formatted fields as CSV.
pub fn rows_to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::momentlp::{optimize, Sense};

    #[test]
    fn binomial_document() {
        let doc = Document::from_pmf(&WeightPmf::binomial(2).unwrap());
        let idx: Vec<i64> = doc.entries.iter().map(|e| e.index).collect();
        let vals: Vec<&str> = doc.entries.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(idx, [-2, 0, 2]);
        assert_eq!(vals, ["1/4", "1/2", "1/4"]);
        let back = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_pmf().unwrap(), WeightPmf::binomial(2).unwrap());
    }

    #[test]
    fn all_reprs_round_trip() {
        let d = SymmetricDist::d_lambda(8, 1, rat(1, 50)).unwrap();
        let p = Document::from_profile(d.profile());
        assert_eq!(Document::from_json(&p.to_json()).unwrap().to_profile().unwrap(), *d.profile());
        assert_eq!(p.to_dist().unwrap(), d);
        let t = SymmetricTest::threshold(8, 2).unwrap();
        let td = Document::from_test(&t);
        assert_eq!(Document::from_json(&td.to_json()).unwrap().to_test().unwrap(), t);
        let c = t.level_coeffs();
        assert_eq!(Document::from_json(&Document::from_coeffs(&c).to_json()).unwrap().to_coeffs().unwrap(), c);
        assert!(td.to_pmf().is_err());
    }

    #[test]
    fn sparse_and_malformed() {
        let doc = Document { n: 2, repr: Repr::WeightPmf, entries: vec![Entry { index: 2, value: "1".into() }] };
        assert_eq!(doc.to_pmf().unwrap().probs(), &[int(0), int(0), int(1)]);
        let dup = Document {
            entries: vec![Entry { index: 2, value: "1/2".into() }, Entry { index: 2, value: "1/2".into() }],
            ..doc.clone()
        };
        assert!(dup.values().is_err());
        let parity = Document { entries: vec![Entry { index: 1, value: "1".into() }], ..doc.clone() };
        assert!(parity.values().is_err());
        let dec = Document { entries: vec![Entry { index: 2, value: "0.5".into() }], ..doc };
        assert!(dec.values().is_err());
        assert!(Document::from_json("{\"n\":2}").is_err());
    }

    #[test]
    fn lp_document_round_trip() {
        let res = optimize(&SymmetricTest::threshold(6, 2).unwrap(), 2, Sense::Max).unwrap();
        let doc = LpDocument::from_result(&res);
        let back = LpDocument::from_json(&doc.to_json()).unwrap().to_result().unwrap();
        assert_eq!(back, res);
    }

    #[test]
    fn csv_quotes_commas() {
        let r = crate::verify::check_block_amplify(4, &rat(1, 2), &rat(1, 2), 1).unwrap();
        let csv = reports_to_csv(&[r]).unwrap();
        assert!(csv.starts_with("claim,params,check"));
        assert_eq!(csv.lines().count(), 2);
        let rows = rows_to_csv(&["a", "b"], &[vec!["x,y".into(), "1".into()]]).unwrap();
        assert_eq!(rows, "a,b\n\"x,y\",1\n");
    }
}
