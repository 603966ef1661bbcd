//! JSON round-tripping for categories, dimer states, and transpose results.
//!
//! Matrices are stored dense row-major as `[re, im]` pairs. Category export
//! requires explicit symbol tables; the level-k su(2) families generate
//! their F-symbols on demand and are reconstructed from their name instead.

use crate::category::{Category, FusionTensor, Label};
use crate::dimer::{DimerState, Side, new_dimer};
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix, trace_norm};
use crate::pt::PTResult;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Row-major [re, im] pairs.
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::InvalidInput("matrix entry count mismatch".into()));
        }
        let mut m = CMatrix::zeros(self.rows, self.cols);
        for (i, e) in self.entries.iter().enumerate() {
            m[(i / self.cols, i % self.cols)] = C64::new(e[0], e[1]);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelJson {
    pub name: String,
    pub dual: usize,
    pub qdim: f64,
    pub twist: [f64; 2],
    pub fs: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub name: String,
    pub labels: Vec<LabelJson>,
    /// Sparse fusion tensor: (a, b, c, N_ab^c).
    pub fusion: Vec<(usize, usize, usize, usize)>,
    /// ((a, b, c, d), block).
    pub f_blocks: Vec<((usize, usize, usize, usize), MatrixJson)>,
    /// ((a, b, c), block).
    pub r_blocks: Vec<((usize, usize, usize), MatrixJson)>,
}

pub fn category_to_json(cat: &Category) -> Result<CategoryJson> {
    let n = cat.num_labels();
    let labels = cat
        .labels()
        .iter()
        .map(|l| LabelJson {
            name: l.name.clone(),
            dual: l.dual,
            qdim: l.qdim,
            twist: [l.twist.re, l.twist.im],
            fs: [l.fs.re, l.fs.im],
        })
        .collect();
    let mut fusion = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = cat.n(a, b, c);
                if v > 0 {
                    fusion.push((a, b, c, v));
                }
            }
        }
    }
    let mut f_blocks = Vec::new();
    for key in cat.admissible_f_keys() {
        let blk = cat.f_block(key.0, key.1, key.2, key.3)?;
        f_blocks.push((key, MatrixJson::from_matrix(&blk)));
    }
    let mut r_blocks = Vec::new();
    for key in cat.admissible_r_keys() {
        let blk = cat.r_block(key.0, key.1, key.2)?;
        r_blocks.push((key, MatrixJson::from_matrix(&blk)));
    }
    Ok(CategoryJson { name: cat.name().to_string(), labels, fusion, f_blocks, r_blocks })
}

pub fn category_from_json(j: &CategoryJson) -> Result<Category> {
    let n = j.labels.len();
    let mut fusion = FusionTensor::new(n);
    for &(a, b, c, v) in &j.fusion {
        if a >= n || b >= n || c >= n {
            return Err(Error::InvalidInput("fusion entry out of range".into()));
        }
        fusion.set(a, b, c, v);
    }
    let labels = j
        .labels
        .iter()
        .map(|l| Label {
            name: l.name.clone(),
            dual: l.dual,
            qdim: l.qdim,
            twist: C64::new(l.twist[0], l.twist[1]),
            fs: C64::new(l.fs[0], l.fs[1]),
        })
        .collect();
    let mut f_blocks = HashMap::new();
    for (key, m) in &j.f_blocks {
        f_blocks.insert(*key, m.to_matrix()?);
    }
    let mut r_blocks = HashMap::new();
    for (key, m) in &j.r_blocks {
        r_blocks.insert(*key, m.to_matrix()?);
    }
    Category::from_tables(j.name.clone(), labels, fusion, f_blocks, r_blocks)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimerJson {
    pub category: String,
    pub a: String,
    pub b: String,
    /// Channel label name -> coefficient matrix.
    pub channels: Vec<(String, MatrixJson)>,
}

pub fn dimer_to_json(state: &DimerState) -> DimerJson {
    let cat = state.cat();
    DimerJson {
        category: cat.name().to_string(),
        a: cat.label(state.a()).name.clone(),
        b: cat.label(state.b()).name.clone(),
        channels: state
            .channels()
            .map(|(f, m)| (cat.label(f).name.clone(), MatrixJson::from_matrix(m)))
            .collect(),
    }
}

pub fn dimer_from_json<'c>(cat: &'c Category, j: &DimerJson) -> Result<DimerState<'c>> {
    let resolve = |name: &str| {
        cat.label_by_name(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown label {name:?}")))
    };
    let a = resolve(&j.a)?;
    let b = resolve(&j.b)?;
    let mut p = BTreeMap::new();
    for (name, m) in &j.channels {
        p.insert(resolve(name)?, m.to_matrix()?);
    }
    new_dimer(cat, a, b, p)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PTResultJson {
    pub side: String,
    pub a: String,
    pub b: String,
    pub channels: Vec<(String, MatrixJson, f64)>,
    pub aln: f64,
}

pub fn pt_result_to_json(res: &PTResult) -> Result<PTResultJson> {
    let cat = res.cat();
    let (a, b) = res.labels();
    let mut channels = Vec::new();
    for (c, m) in res.channels() {
        channels.push((cat.label(c).name.clone(), MatrixJson::from_matrix(m), trace_norm(m)?));
    }
    Ok(PTResultJson {
        side: match res.side() {
            Side::A => "A".into(),
            Side::B => "B".into(),
        },
        a: cat.label(a).name.clone(),
        b: cat.label(b).name.clone(),
        channels,
        aln: res.aln()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::fibonacci::{TAU, VAC, fibonacci};
    use crate::category::{CheckMode, verify_all};
    use crate::dimer::dimer_from_weights;

    #[test]
    fn category_round_trip() {
        let cat = fibonacci().unwrap();
        let j = category_to_json(&cat).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: CategoryJson = serde_json::from_str(&text).unwrap();
        let cat2 = category_from_json(&back).unwrap();
        assert_eq!(cat2.num_labels(), 2);
        for report in verify_all(&cat2, CheckMode::Exhaustive).unwrap() {
            assert!(report.pass(), "{report}");
        }
        let f1 = cat.f_block(TAU, TAU, TAU, TAU).unwrap();
        let f2 = cat2.f_block(TAU, TAU, TAU, TAU).unwrap();
        assert!(f1.max_abs_diff(&f2) < 1e-15);
    }

    #[test]
    fn dimer_round_trip() {
        let cat = fibonacci().unwrap();
        let st = dimer_from_weights(&cat, TAU, TAU, &[(VAC, 0.3), (TAU, 0.7)]).unwrap();
        let j = dimer_to_json(&st);
        let text = serde_json::to_string(&j).unwrap();
        let back: DimerJson = serde_json::from_str(&text).unwrap();
        let st2 = dimer_from_json(&cat, &back).unwrap();
        assert!((st2.weight(VAC) - 0.3).abs() < 1e-15);
        assert!((st2.weight(TAU) - 0.7).abs() < 1e-15);
    }
}
