//! Algebraic data of an anyon model and its consistency checks.
//!
//! A [`Category`] holds labels (with quantum dimensions, twists and
//! Frobenius-Schur indicators), the fusion tensor `N_ab^c`, and the F/R
//! symbol stores. Bending (A) symbols and twists are derived quantities.
//!
//! F-blocks are unitary matrices indexed by composite fusion-tree bases. The
//! composite ordering is fixed throughout the crate: lexicographic by
//! (channel label id, first vertex index, second vertex index).
//!
//! The su(2)_k family computes its F-symbols on demand (see
//! [`crate::builtin::su2`]); at level 100 the full table would have billions
//! of entries while any one computation touches only a handful of blocks.

use crate::builtin::su2::Su2Data;
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Mutex;

/// One topological charge.
#[derive(Clone, Debug)]
pub struct Label {
    pub name: String,
    /// Index of the conjugate charge.
    pub dual: usize,
    /// Quantum dimension d_a (largest eigenvalue of the fusion matrix N_a).
    pub qdim: f64,
    /// Topological twist theta_a (unit modulus).
    pub twist: C64,
    /// Frobenius-Schur indicator kappa_a (unit modulus).
    pub fs: C64,
}

/// Fusion multiplicities N_ab^c as a dense rank-3 tensor.
#[derive(Clone, Debug)]
pub struct FusionTensor {
    n: usize,
    data: Vec<u32>,
}

impl FusionTensor {
    pub fn new(n: usize) -> Self {
        FusionTensor { n, data: vec![0; n * n * n] }
    }

    pub fn n_labels(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        self.data[(a * self.n + b) * self.n + c] as usize
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: usize) {
        self.data[(a * self.n + b) * self.n + c] = v as u32;
    }

    /// Channels c with N_ab^c >= 1, ascending.
    pub fn channels(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.get(a, b, c) > 0).collect()
    }
}

pub type FKey = (usize, usize, usize, usize);
pub type RKey = (usize, usize, usize);

enum FSource {
    Table(HashMap<FKey, CMatrix>),
    /// su(2)_k blocks computed from q-deformed 6j symbols, memoized.
    Su2(Su2Data, Mutex<HashMap<FKey, CMatrix>>),
}

enum RSource {
    Table(HashMap<RKey, CMatrix>),
    Su2(Su2Data),
}

pub struct Category {
    pub name: String,
    labels: Vec<Label>,
    fusion: FusionTensor,
    f: FSource,
    r: RSource,
}

impl Category {
    pub fn from_tables(
        name: String,
        labels: Vec<Label>,
        fusion: FusionTensor,
        f_blocks: HashMap<FKey, CMatrix>,
        r_blocks: HashMap<RKey, CMatrix>,
    ) -> Result<Self> {
        let cat = Category {
            name,
            labels,
            fusion,
            f: FSource::Table(f_blocks),
            r: RSource::Table(r_blocks),
        };
        cat.validate_basic()?;
        Ok(cat)
    }

    pub(crate) fn from_su2(name: String, labels: Vec<Label>, fusion: FusionTensor, data: Su2Data) -> Result<Self> {
        let cat = Category {
            name,
            labels,
            fusion,
            f: FSource::Su2(data.clone(), Mutex::new(HashMap::new())),
            r: RSource::Su2(data),
        };
        cat.validate_basic()?;
        Ok(cat)
    }

    fn validate_basic(&self) -> Result<()> {
        let n = self.labels.len();
        if self.fusion.n_labels() != n {
            return Err(Error::InvalidInput("fusion tensor size does not match label count".into()));
        }
        for a in 0..n {
            let d = self.labels[a].dual;
            if d >= n || self.labels[d].dual != a {
                return Err(Error::InvalidInput(format!("dual structure broken at label {a}")));
            }
            if (self.labels[a].qdim - self.labels[d].qdim).abs() > 1e-10 {
                return Err(Error::InvalidInput(format!("qdim(a) != qdim(dual a) at label {a}")));
            }
            if (self.labels[a].twist - self.labels[d].twist).norm() > 1e-10 {
                return Err(Error::InvalidInput(format!("twist(a) != twist(dual a) at label {a}")));
            }
            // Vacuum / conjugate axioms.
            for c in 0..n {
                if self.fusion.get(a, 0, c) != usize::from(c == a)
                    || self.fusion.get(0, a, c) != usize::from(c == a)
                {
                    return Err(Error::InvalidInput("vacuum fusion axiom violated".into()));
                }
            }
            for b in 0..n {
                if self.fusion.get(a, b, 0) != usize::from(b == d) {
                    return Err(Error::InvalidInput("conjugate fusion axiom violated".into()));
                }
            }
        }
        Ok(())
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &Label {
        &self.labels[a]
    }

    pub fn label_by_name(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    pub fn dual(&self, a: usize) -> usize {
        self.labels[a].dual
    }

    pub fn qdim(&self, a: usize) -> f64 {
        self.labels[a].qdim
    }

    pub fn twist(&self, a: usize) -> C64 {
        self.labels[a].twist
    }

    pub fn fs(&self, a: usize) -> C64 {
        self.labels[a].fs
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.fusion.get(a, b, c)
    }

    pub fn fusion(&self) -> &FusionTensor {
        &self.fusion
    }

    pub fn channels(&self, a: usize, b: usize) -> Vec<usize> {
        self.fusion.channels(a, b)
    }

    /// Number of composite rows of F^{abc}_d: sum over e of N_ab^e * N_ec^d.
    pub fn f_rows(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        (0..self.num_labels()).map(|e| self.n(a, b, e) * self.n(e, c, d)).sum()
    }

    /// Number of composite columns of F^{abc}_d: sum over f of N_bc^f * N_af^d.
    pub fn f_cols(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        (0..self.num_labels()).map(|f| self.n(b, c, f) * self.n(a, f, d)).sum()
    }

    /// Row index of (e, mu, nu) in F^{abc}_d, with mu in 0..N_ab^e and
    /// nu in 0..N_ec^d, lexicographic by (e, mu, nu).
    pub fn f_row_index(&self, a: usize, b: usize, c: usize, d: usize, e: usize, mu: usize, nu: usize) -> usize {
        let mut off = 0;
        for ep in 0..e {
            off += self.n(a, b, ep) * self.n(ep, c, d);
        }
        off + mu * self.n(e, c, d) + nu
    }

    /// Column index of (f, mu, nu) in F^{abc}_d, with mu in 0..N_bc^f and
    /// nu in 0..N_af^d.
    pub fn f_col_index(&self, a: usize, b: usize, c: usize, d: usize, f: usize, mu: usize, nu: usize) -> usize {
        let mut off = 0;
        for fp in 0..f {
            off += self.n(b, c, fp) * self.n(a, fp, d);
        }
        off + mu * self.n(a, f, d) + nu
    }

    /// Full F-block F^{abc}_d.
    pub fn f_block(&self, a: usize, b: usize, c: usize, d: usize) -> Result<CMatrix> {
        let rows = self.f_rows(a, b, c, d);
        let cols = self.f_cols(a, b, c, d);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "F^{{{},{},{}}}_{} is empty (inadmissible labels)",
                self.labels[a].name, self.labels[b].name, self.labels[c].name, self.labels[d].name
            )));
        }
        match &self.f {
            FSource::Table(map) => map.get(&(a, b, c, d)).cloned().ok_or_else(|| {
                Error::IncompleteData(format!(
                    "missing F-block F^{{{},{},{}}}_{}",
                    self.labels[a].name, self.labels[b].name, self.labels[c].name, self.labels[d].name
                ))
            }),
            FSource::Su2(data, cache) => {
                if let Some(m) = cache.lock().unwrap().get(&(a, b, c, d)) {
                    return Ok(m.clone());
                }
                let m = data.f_block(self, a, b, c, d)?;
                cache.lock().unwrap().insert((a, b, c, d), m.clone());
                Ok(m)
            }
        }
    }

    /// Single F-block entry by fusion-tree indices; avoids building whole
    /// blocks for the lazily evaluated families.
    #[allow(clippy::too_many_arguments)]
    pub fn f_entry(
        &self,
        a: usize, b: usize, c: usize, d: usize,
        e: usize, mu: usize, nu: usize,
        f: usize, al: usize, be: usize,
    ) -> Result<C64> {
        match &self.f {
            FSource::Su2(data, _) => data.f_entry(a, b, c, d, e, f),
            FSource::Table(_) => {
                let blk = self.f_block(a, b, c, d)?;
                Ok(blk[(self.f_row_index(a, b, c, d, e, mu, nu), self.f_col_index(a, b, c, d, f, al, be))])
            }
        }
    }

    /// R-block R^{ab}_c of shape N_ab^c x N_ba^c.
    pub fn r_block(&self, a: usize, b: usize, c: usize) -> Result<CMatrix> {
        if self.n(a, b, c) == 0 {
            return Err(Error::InvalidInput(format!(
                "R^{{{},{}}}_{} is empty (inadmissible labels)",
                self.labels[a].name, self.labels[b].name, self.labels[c].name
            )));
        }
        match &self.r {
            RSource::Table(map) => map.get(&(a, b, c)).cloned().ok_or_else(|| {
                Error::IncompleteData(format!(
                    "missing R-block R^{{{},{}}}_{}",
                    self.labels[a].name, self.labels[b].name, self.labels[c].name
                ))
            }),
            RSource::Su2(data) => Ok(CMatrix::scalar(data.r_symbol(a, b, c))),
        }
    }

    /// Bending symbol [A^{ab}_c]_{mu,nu}
    ///   = sqrt(d_a d_b / d_c) * conj(kappa_a) * conj([F^{abar,a,b}_b]_{(vac,0,0),(c,mu,nu)}),
    /// of shape N_ab^c x N_{abar,c}^b.
    pub fn a_block(&self, a: usize, b: usize, c: usize) -> Result<CMatrix> {
        let abar = self.dual(a);
        let nab = self.n(a, b, c);
        let ncols = self.n(abar, c, b);
        if nab == 0 {
            return Err(Error::InvalidInput("A-block for inadmissible triple".into()));
        }
        let scale = (self.qdim(a) * self.qdim(b) / self.qdim(c)).sqrt();
        let kconj = self.fs(a).conj();
        let mut out = CMatrix::zeros(nab, ncols);
        for mu in 0..nab {
            for nu in 0..ncols {
                let fe = self.f_entry(abar, a, b, b, 0, 0, 0, c, mu, nu)?;
                out[(mu, nu)] = fe.conj() * kconj * scale;
            }
        }
        Ok(out)
    }

    /// theta_a from R-symbols: sum over c of (d_c/d_a) tr R^{aa}_c.
    pub fn twist_from_r(&self, a: usize) -> Result<C64> {
        let mut t = C64::new(0.0, 0.0);
        for c in self.channels(a, a) {
            let r = self.r_block(a, a, c)?;
            t += r.trace() * C64::new(self.qdim(c) / self.qdim(a), 0.0);
        }
        Ok(t)
    }

    /// All F-block keys with non-empty row and column bases.
    pub fn admissible_f_keys(&self) -> Vec<FKey> {
        let n = self.num_labels();
        let mut keys = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if self.f_rows(a, b, c, d) > 0 && self.f_cols(a, b, c, d) > 0 {
                            keys.push((a, b, c, d));
                        }
                    }
                }
            }
        }
        keys
    }

    pub fn admissible_r_keys(&self) -> Vec<RKey> {
        let n = self.num_labels();
        let mut keys = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.n(a, b, c) > 0 {
                        keys.push((a, b, c));
                    }
                }
            }
        }
        keys
    }
}

/// Outcome of one structural check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub max_residual: f64,
    pub tol: f64,
    pub checked: u64,
    pub worst_case: Option<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.max_residual <= self.tol
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} (max residual {:.3e}, tol {:.1e}, {} cases checked{})",
            self.check,
            if self.pass() { "pass" } else { "FAIL" },
            self.max_residual,
            self.tol,
            self.checked,
            match &self.worst_case {
                Some(w) if !self.pass() => format!(", first violation at {w}"),
                _ => String::new(),
            }
        )
    }
}

/// How thoroughly to scan the identity space.
#[derive(Clone, Copy, Debug)]
pub enum CheckMode {
    /// Every admissible tuple. Feasible for all built-ins except large-k su(2).
    Exhaustive,
    /// Deterministic random sampling of equation instances.
    Sampled { count: usize, seed: u64 },
    /// Exhaustive for small label sets, sampled otherwise.
    Auto,
}

pub const CONSISTENCY_TOL: f64 = 1e-8;

fn resolve_mode(cat: &Category, mode: CheckMode) -> CheckMode {
    match mode {
        CheckMode::Auto => {
            if cat.num_labels() <= 8 {
                CheckMode::Exhaustive
            } else {
                CheckMode::Sampled { count: 3000, seed: 0x5eed }
            }
        }
        m => m,
    }
}

struct ResidualTracker {
    max: f64,
    checked: u64,
    worst: Option<String>,
}

impl ResidualTracker {
    fn new() -> Self {
        ResidualTracker { max: 0.0, checked: 0, worst: None }
    }

    fn record(&mut self, r: f64, tol: f64, desc: impl Fn() -> String) {
        self.checked += 1;
        if r > self.max {
            self.max = r;
            if r > tol && self.worst.is_none() {
                self.worst = Some(desc());
            } else if r > tol {
                self.worst = Some(desc());
            }
        }
    }

    fn report(self, check: &str, tol: f64) -> CheckReport {
        CheckReport {
            check: check.into(),
            max_residual: self.max,
            tol,
            checked: self.checked,
            worst_case: self.worst,
        }
    }
}

/// Residuals of the pentagon identity for one external 5-tuple (a,b,c,d;e),
/// maximized over all internal basis elements.
#[allow(clippy::too_many_arguments)]
fn pentagon_residual(cat: &Category, a: usize, b: usize, c: usize, d: usize, e: usize) -> Result<f64> {
    let nl = cat.num_labels();
    let mut blocks: HashMap<FKey, CMatrix> = HashMap::new();
    let mut fetch = |key: FKey| -> Result<CMatrix> {
        if let Some(m) = blocks.get(&key) {
            return Ok(m.clone());
        }
        let m = cat.f_block(key.0, key.1, key.2, key.3)?;
        blocks.insert(key, m.clone());
        Ok(m)
    };
    let mut worst: f64 = 0.0;
    for f in 0..nl {
        let nabf = cat.n(a, b, f);
        if nabf == 0 {
            continue;
        }
        for g in 0..nl {
            let nfcg = cat.n(f, c, g);
            let ngde = cat.n(g, d, e);
            if nfcg == 0 || ngde == 0 {
                continue;
            }
            let f_fcde = fetch((f, c, d, e))?;
            for l in 0..nl {
                let ncdl = cat.n(c, d, l);
                let nfle = cat.n(f, l, e);
                if ncdl == 0 {
                    continue;
                }
                for k in 0..nl {
                    let nblk = cat.n(b, l, k);
                    let nake = cat.n(a, k, e);
                    if nblk == 0 || nake == 0 {
                        continue;
                    }
                    let f_abl = fetch((a, b, l, e))?;
                    for al in 0..nabf {
                        for be in 0..nfcg {
                            for ga in 0..ngde {
                                for de in 0..ncdl {
                                    for la in 0..nblk {
                                        for mu in 0..nake {
                                            // LHS: sum over nu in N_fl^e.
                                            let mut lhs = C64::new(0.0, 0.0);
                                            for nu in 0..nfle {
                                                lhs += f_fcde[(
                                                    cat.f_row_index(f, c, d, e, g, be, ga),
                                                    cat.f_col_index(f, c, d, e, l, de, nu),
                                                )] * f_abl[(
                                                    cat.f_row_index(a, b, l, e, f, al, nu),
                                                    cat.f_col_index(a, b, l, e, k, la, mu),
                                                )];
                                            }
                                            // RHS: sum over h and its vertices.
                                            let mut rhs = C64::new(0.0, 0.0);
                                            for h in 0..nl {
                                                let nbch = cat.n(b, c, h);
                                                let nahg = cat.n(a, h, g);
                                                let nhdk = cat.n(h, d, k);
                                                if nbch == 0 || nahg == 0 || nhdk == 0 {
                                                    continue;
                                                }
                                                let f_abcg = fetch((a, b, c, g))?;
                                                let f_ahde = fetch((a, h, d, e))?;
                                                let f_bcdk = fetch((b, c, d, k))?;
                                                for si in 0..nbch {
                                                    for ps in 0..nahg {
                                                        for ro in 0..nhdk {
                                                            rhs += f_abcg[(
                                                                cat.f_row_index(a, b, c, g, f, al, be),
                                                                cat.f_col_index(a, b, c, g, h, si, ps),
                                                            )] * f_ahde[(
                                                                cat.f_row_index(a, h, d, e, g, ps, ga),
                                                                cat.f_col_index(a, h, d, e, k, ro, mu),
                                                            )] * f_bcdk[(
                                                                cat.f_row_index(b, c, d, k, h, si, ro),
                                                                cat.f_col_index(b, c, d, k, l, de, la),
                                                            )];
                                                        }
                                                    }
                                                }
                                            }
                                            worst = worst.max((lhs - rhs).norm());
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Residuals of both hexagon identities (R and R-inverse variants) for one
/// external 4-tuple (c,a,b;d), maximized over internal indices.
fn hexagon_residual(cat: &Category, c: usize, a: usize, b: usize, d: usize) -> Result<f64> {
    let nl = cat.num_labels();
    let mut worst: f64 = 0.0;
    for e in 0..nl {
        let ncae = cat.n(c, a, e);
        let nebd = cat.n(e, b, d);
        if ncae == 0 || nebd == 0 {
            continue;
        }
        let r_ace = cat.r_block(a, c, e)?; // N_ac^e x N_ca^e
        let r_cae_inv = cat.r_block(c, a, e)?.adjoint(); // N_ac^e x N_ca^e
        let f_acbd = cat.f_block(a, c, b, d)?;
        let f_cabd = cat.f_block(c, a, b, d)?;
        for g in 0..nl {
            let nbcg = cat.n(b, c, g);
            let nagd = cat.n(a, g, d);
            if nbcg == 0 || nagd == 0 {
                continue;
            }
            let r_bcg = cat.r_block(b, c, g)?; // N_bc^g x N_cb^g
            let r_cbg_inv = cat.r_block(c, b, g)?.adjoint(); // N_bc^g x N_cb^g
            let f_abcd = cat.f_block(a, b, c, d)?;
            let nace = cat.n(a, c, e);
            let ncbg = cat.n(c, b, g);
            for al in 0..ncae {
                for be in 0..nebd {
                    for gp in 0..nbcg {
                        for nu in 0..nagd {
                            for plus in [true, false] {
                                let mut lhs = C64::new(0.0, 0.0);
                                for alp in 0..nace {
                                    for ga in 0..ncbg {
                                        let r1 = if plus { r_ace[(alp, al)] } else { r_cae_inv[(alp, al)] };
                                        let r2 = if plus { r_bcg[(gp, ga)] } else { r_cbg_inv[(gp, ga)] };
                                        lhs += r1
                                            * f_acbd[(
                                                cat.f_row_index(a, c, b, d, e, alp, be),
                                                cat.f_col_index(a, c, b, d, g, ga, nu),
                                            )]
                                            * r2;
                                    }
                                }
                                let mut rhs = C64::new(0.0, 0.0);
                                for f in 0..nl {
                                    let nabf = cat.n(a, b, f);
                                    let ncfd = cat.n(c, f, d);
                                    let nfcd = cat.n(f, c, d);
                                    if nabf == 0 || ncfd == 0 {
                                        continue;
                                    }
                                    let r_fcd = cat.r_block(f, c, d)?; // N_fc^d x N_cf^d
                                    let r_cfd_inv = cat.r_block(c, f, d)?.adjoint();
                                    for de in 0..nabf {
                                        for si in 0..ncfd {
                                            for sip in 0..nfcd {
                                                let rmid = if plus {
                                                    r_fcd[(sip, si)]
                                                } else {
                                                    r_cfd_inv[(sip, si)]
                                                };
                                                rhs += f_cabd[(
                                                    cat.f_row_index(c, a, b, d, e, al, be),
                                                    cat.f_col_index(c, a, b, d, f, de, si),
                                                )] * rmid
                                                    * f_abcd[(
                                                        cat.f_row_index(a, b, c, d, f, de, sip),
                                                        cat.f_col_index(a, b, c, d, g, gp, nu),
                                                    )];
                                            }
                                        }
                                    }
                                }
                                worst = worst.max((lhs - rhs).norm());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Pentagon identity check over the admissible tuple space.
pub fn verify_pentagon(cat: &Category, mode: CheckMode) -> Result<CheckReport> {
    let mode = resolve_mode(cat, mode);
    let mut tr = ResidualTracker::new();
    let nl = cat.num_labels();
    match mode {
        CheckMode::Exhaustive => {
            for a in 0..nl {
                for b in 0..nl {
                    for c in 0..nl {
                        for d in 0..nl {
                            for e in 0..nl {
                                // e must be reachable from (a,b,c,d).
                                let reachable = (0..nl).any(|f| {
                                    cat.n(a, b, f) > 0 && (0..nl).any(|g| cat.n(f, c, g) > 0 && cat.n(g, d, e) > 0)
                                });
                                if !reachable {
                                    continue;
                                }
                                let r = pentagon_residual(cat, a, b, c, d, e)?;
                                tr.record(r, CONSISTENCY_TOL, || format!("(a,b,c,d;e)=({a},{b},{c},{d};{e})"));
                            }
                        }
                    }
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < count {
                let a = rng.gen_range(0..nl);
                let b = rng.gen_range(0..nl);
                let c = rng.gen_range(0..nl);
                let d = rng.gen_range(0..nl);
                let fs = cat.channels(a, b);
                let f = fs[rng.gen_range(0..fs.len())];
                let gs = cat.channels(f, c);
                if gs.is_empty() {
                    continue;
                }
                let g = gs[rng.gen_range(0..gs.len())];
                let es = cat.channels(g, d);
                if es.is_empty() {
                    continue;
                }
                let e = es[rng.gen_range(0..es.len())];
                // Random out pair (l,k).
                let ls = cat.channels(c, d);
                let l = ls[rng.gen_range(0..ls.len())];
                let ks: Vec<usize> = (0..nl).filter(|&k| cat.n(b, l, k) > 0 && cat.n(a, k, e) > 0).collect();
                if ks.is_empty() {
                    continue;
                }
                let k = ks[rng.gen_range(0..ks.len())];
                let r = pentagon_instance_residual(cat, a, b, c, d, e, f, g, l, k)?;
                tr.record(r, CONSISTENCY_TOL, || {
                    format!("(a,b,c,d;e)=({a},{b},{c},{d};{e}) f={f} g={g} l={l} k={k}")
                });
                done += 1;
            }
        }
        CheckMode::Auto => unreachable!(),
    }
    Ok(tr.report("pentagon", CONSISTENCY_TOL))
}

/// Single pentagon equation instance, all multiplicity indices scanned.
#[allow(clippy::too_many_arguments)]
fn pentagon_instance_residual(
    cat: &Category,
    a: usize, b: usize, c: usize, d: usize, e: usize,
    f: usize, g: usize, l: usize, k: usize,
) -> Result<f64> {
    let nl = cat.num_labels();
    let mut worst: f64 = 0.0;
    for al in 0..cat.n(a, b, f) {
        for be in 0..cat.n(f, c, g) {
            for ga in 0..cat.n(g, d, e) {
                for de in 0..cat.n(c, d, l) {
                    for la in 0..cat.n(b, l, k) {
                        for mu in 0..cat.n(a, k, e) {
                            let mut lhs = C64::new(0.0, 0.0);
                            for nu in 0..cat.n(f, l, e) {
                                lhs += cat.f_entry(f, c, d, e, g, be, ga, l, de, nu)?
                                    * cat.f_entry(a, b, l, e, f, al, nu, k, la, mu)?;
                            }
                            let mut rhs = C64::new(0.0, 0.0);
                            for h in 0..nl {
                                if cat.n(b, c, h) == 0 || cat.n(a, h, g) == 0 || cat.n(h, d, k) == 0 {
                                    continue;
                                }
                                for si in 0..cat.n(b, c, h) {
                                    for ps in 0..cat.n(a, h, g) {
                                        for ro in 0..cat.n(h, d, k) {
                                            rhs += cat.f_entry(a, b, c, g, f, al, be, h, si, ps)?
                                                * cat.f_entry(a, h, d, e, g, ps, ga, k, ro, mu)?
                                                * cat.f_entry(b, c, d, k, h, si, ro, l, de, la)?;
                                        }
                                    }
                                }
                            }
                            worst = worst.max((lhs - rhs).norm());
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Hexagon identity check (both chiralities).
pub fn verify_hexagon(cat: &Category, mode: CheckMode) -> Result<CheckReport> {
    let mode = resolve_mode(cat, mode);
    let mut tr = ResidualTracker::new();
    let nl = cat.num_labels();
    match mode {
        CheckMode::Exhaustive => {
            for c in 0..nl {
                for a in 0..nl {
                    for b in 0..nl {
                        for d in 0..nl {
                            let reachable = (0..nl).any(|e| cat.n(c, a, e) > 0 && cat.n(e, b, d) > 0);
                            if !reachable {
                                continue;
                            }
                            let r = hexagon_residual(cat, c, a, b, d)?;
                            tr.record(r, CONSISTENCY_TOL, || format!("(c,a,b;d)=({c},{a},{b};{d})"));
                        }
                    }
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let mut done = 0;
            while done < count {
                let c = rng.gen_range(0..nl);
                let a = rng.gen_range(0..nl);
                let b = rng.gen_range(0..nl);
                let es = cat.channels(c, a);
                let e = es[rng.gen_range(0..es.len())];
                let ds = cat.channels(e, b);
                if ds.is_empty() {
                    continue;
                }
                let d = ds[rng.gen_range(0..ds.len())];
                let gs: Vec<usize> = (0..nl).filter(|&g| cat.n(b, c, g) > 0 && cat.n(a, g, d) > 0).collect();
                if gs.is_empty() {
                    continue;
                }
                let g = gs[rng.gen_range(0..gs.len())];
                let r = hexagon_instance_residual(cat, c, a, b, d, e, g)?;
                tr.record(r, CONSISTENCY_TOL, || format!("(c,a,b;d)=({c},{a},{b};{d}) e={e} g={g}"));
                done += 1;
            }
        }
        CheckMode::Auto => unreachable!(),
    }
    Ok(tr.report("hexagon", CONSISTENCY_TOL))
}

/// Single hexagon instance for a chosen (e,g), both chiralities, all
/// multiplicity indices scanned.
fn hexagon_instance_residual(
    cat: &Category,
    c: usize, a: usize, b: usize, d: usize,
    e: usize, g: usize,
) -> Result<f64> {
    let nl = cat.num_labels();
    let r_ace = cat.r_block(a, c, e)?;
    let r_cae_inv = cat.r_block(c, a, e)?.adjoint();
    let r_bcg = cat.r_block(b, c, g)?;
    let r_cbg_inv = cat.r_block(c, b, g)?.adjoint();
    let mut worst: f64 = 0.0;
    for al in 0..cat.n(c, a, e) {
        for be in 0..cat.n(e, b, d) {
            for gp in 0..cat.n(b, c, g) {
                for nu in 0..cat.n(a, g, d) {
                    for plus in [true, false] {
                        let mut lhs = C64::new(0.0, 0.0);
                        for alp in 0..cat.n(a, c, e) {
                            for ga in 0..cat.n(c, b, g) {
                                let r1 = if plus { r_ace[(alp, al)] } else { r_cae_inv[(alp, al)] };
                                let r2 = if plus { r_bcg[(gp, ga)] } else { r_cbg_inv[(gp, ga)] };
                                lhs += r1 * cat.f_entry(a, c, b, d, e, alp, be, g, ga, nu)? * r2;
                            }
                        }
                        let mut rhs = C64::new(0.0, 0.0);
                        for f in 0..nl {
                            if cat.n(a, b, f) == 0 || cat.n(c, f, d) == 0 {
                                continue;
                            }
                            let r_fcd = cat.r_block(f, c, d)?;
                            let r_cfd_inv = cat.r_block(c, f, d)?.adjoint();
                            for de in 0..cat.n(a, b, f) {
                                for si in 0..cat.n(c, f, d) {
                                    for sip in 0..cat.n(f, c, d) {
                                        let rmid = if plus { r_fcd[(sip, si)] } else { r_cfd_inv[(sip, si)] };
                                        rhs += cat.f_entry(c, a, b, d, e, al, be, f, de, si)?
                                            * rmid
                                            * cat.f_entry(a, b, c, d, f, de, sip, g, gp, nu)?;
                                    }
                                }
                            }
                        }
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Every F-block (all admissible for table-backed categories; a deterministic
/// sample for lazily evaluated ones) must be unitary.
pub fn verify_f_unitarity(cat: &Category, mode: CheckMode) -> Result<CheckReport> {
    let mode = resolve_mode(cat, mode);
    let mut tr = ResidualTracker::new();
    let keys: Vec<FKey> = match mode {
        CheckMode::Exhaustive => cat.admissible_f_keys(),
        CheckMode::Sampled { count, seed } => {
            // Rejection-sample admissible keys: enumerating the full O(n^4)
            // key space first would dwarf the check itself at large n.
            let n = cat.num_labels();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
            let mut keys = Vec::with_capacity(count);
            while keys.len() < count {
                let (a, b, c, d) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if cat.f_rows(a, b, c, d) > 0 && cat.f_cols(a, b, c, d) > 0 {
                    keys.push((a, b, c, d));
                }
            }
            keys
        }
        CheckMode::Auto => unreachable!(),
    };
    const TOL: f64 = 1e-10;
    for (a, b, c, d) in keys {
        let blk = cat.f_block(a, b, c, d)?;
        let r = if blk.is_square() { blk.unitarity_defect() } else { f64::INFINITY };
        tr.record(r, TOL, || format!("F^{{{a},{b},{c}}}_{d}"));
    }
    Ok(tr.report("f-unitarity", TOL))
}

/// Quantum dimension identity d_a d_b = sum_c N_ab^c d_c.
pub fn verify_dimension_identity(cat: &Category) -> Result<CheckReport> {
    let mut tr = ResidualTracker::new();
    const TOL: f64 = 1e-10;
    let n = cat.num_labels();
    for a in 0..n {
        for b in 0..n {
            let lhs = cat.qdim(a) * cat.qdim(b);
            let rhs: f64 = (0..n).map(|c| cat.n(a, b, c) as f64 * cat.qdim(c)).sum();
            tr.record((lhs - rhs).abs(), TOL, || format!("(a,b)=({a},{b})"));
        }
    }
    Ok(tr.report("dimension-identity", TOL))
}

/// Stored twists must equal the R-symbol evaluation.
pub fn verify_twists(cat: &Category) -> Result<CheckReport> {
    let mut tr = ResidualTracker::new();
    const TOL: f64 = 1e-10;
    for a in 0..cat.num_labels() {
        let t = cat.twist_from_r(a)?;
        tr.record((t - cat.twist(a)).norm(), TOL, || format!("label {a}"));
        tr.record((t.norm() - 1.0).abs(), TOL, || format!("|theta| at label {a}"));
    }
    Ok(tr.report("twist-from-r", TOL))
}

/// A-blocks must be unitary.
pub fn verify_a_unitarity(cat: &Category, mode: CheckMode) -> Result<CheckReport> {
    let mode = resolve_mode(cat, mode);
    let mut tr = ResidualTracker::new();
    const TOL: f64 = 1e-10;
    let keys: Vec<RKey> = match mode {
        CheckMode::Exhaustive => cat.admissible_r_keys(),
        CheckMode::Sampled { count, seed } => {
            let all = cat.admissible_r_keys();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
            (0..count.min(all.len())).map(|_| all[rng.gen_range(0..all.len())]).collect()
        }
        CheckMode::Auto => unreachable!(),
    };
    for (a, b, c) in keys {
        let blk = cat.a_block(a, b, c)?;
        let r = if blk.is_square() { blk.unitarity_defect() } else { f64::INFINITY };
        tr.record(r, TOL, || format!("A^{{{a},{b}}}_{c}"));
    }
    Ok(tr.report("a-unitarity", TOL))
}

/// R-blocks must be unitary.
pub fn verify_r_unitarity(cat: &Category) -> Result<CheckReport> {
    let mut tr = ResidualTracker::new();
    const TOL: f64 = 1e-10;
    for (a, b, c) in cat.admissible_r_keys() {
        let blk = cat.r_block(a, b, c)?;
        let r = if blk.is_square() { blk.unitarity_defect() } else { f64::INFINITY };
        tr.record(r, TOL, || format!("R^{{{a},{b}}}_{c}"));
    }
    Ok(tr.report("r-unitarity", TOL))
}

/// The full structural suite.
pub fn verify_all(cat: &Category, mode: CheckMode) -> Result<Vec<CheckReport>> {
    Ok(vec![
        verify_pentagon(cat, mode)?,
        verify_hexagon(cat, mode)?,
        verify_f_unitarity(cat, mode)?,
        verify_r_unitarity(cat)?,
        verify_a_unitarity(cat, mode)?,
        verify_dimension_identity(cat)?,
        verify_twists(cat)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{fibonacci, ising, su2_k, su3_3_subtheory};
    use crate::json::{category_from_json, category_to_json};
    use std::f64::consts::PI;

    #[test]
    fn bending_symbols_on_small_models() {
        // A^{a,vac}_a = 1 and A^{tau,tau}_vac = 1 in Fibonacci.
        let fib = fibonacci().unwrap();
        let tau = fib.label_by_name("tau").unwrap();
        let one = C64::new(1.0, 0.0);
        assert!((fib.a_block(tau, 0, tau).unwrap()[(0, 0)] - one).norm() < 1e-12);
        assert!((fib.a_block(tau, tau, 0).unwrap()[(0, 0)] - one).norm() < 1e-12);
        // kappa_sigma cancels against the F entry in A^{sigma,sigma}_vac,
        // so the bend is +1 in all eight Ising-type models.
        for nu in [1i64, 3, 5, 7, 9, 11, 13, 15] {
            let cat = ising(nu).unwrap();
            let s = cat.label_by_name("sigma").unwrap();
            let a = cat.a_block(s, s, 0).unwrap();
            assert!((a[(0, 0)] - one).norm() < 1e-12, "nu = {nu}");
        }
    }

    #[test]
    fn twist_from_r_matches_table_twists() {
        for cat in [
            ising(1).unwrap(),
            ising(3).unwrap(),
            fibonacci().unwrap(),
            su2_k(4).unwrap(),
            su3_3_subtheory().unwrap(),
        ] {
            for a in 0..cat.num_labels() {
                let t = cat.twist_from_r(a).unwrap();
                assert!((t - cat.twist(a)).norm() < 1e-10, "{} label {a}", cat.name());
            }
        }
        let t = ising(1).unwrap().twist_from_r(1).unwrap();
        assert!((t - C64::from_polar(1.0, PI / 8.0)).norm() < 1e-12);
        let t = fibonacci().unwrap().twist_from_r(1).unwrap();
        assert!((t - C64::from_polar(1.0, 4.0 * PI / 5.0)).norm() < 1e-12);
    }

    #[test]
    fn pentagon_flags_a_corrupted_f_entry() {
        let cat = fibonacci().unwrap();
        let mut j = category_to_json(&cat).unwrap();
        let (_, blk) = j.f_blocks.iter_mut().find(|(k, _)| *k == (1, 1, 1, 1)).unwrap();
        blk.entries[0][0] = -blk.entries[0][0];
        let bad = category_from_json(&j).unwrap();
        let rep = verify_pentagon(&bad, CheckMode::Exhaustive).unwrap();
        assert!(!rep.pass());
        assert!(rep.worst_case.is_some());
        assert!(verify_pentagon(&cat, CheckMode::Exhaustive).unwrap().pass());
    }

    #[test]
    fn hexagon_flags_a_conjugated_braid_entry() {
        let cat = fibonacci().unwrap();
        let mut j = category_to_json(&cat).unwrap();
        // Conjugating one R block (but not the other) breaks the hexagon.
        let (_, blk) = j.r_blocks.iter_mut().find(|(k, _)| *k == (1, 1, 1)).unwrap();
        for e in blk.entries.iter_mut() {
            e[1] = -e[1];
        }
        let bad = category_from_json(&j).unwrap();
        let rep = verify_hexagon(&bad, CheckMode::Exhaustive).unwrap();
        assert!(!rep.pass());
        assert!(verify_hexagon(&cat, CheckMode::Exhaustive).unwrap().pass());
    }
}
