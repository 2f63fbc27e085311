//! Seeded generation of instances that satisfy a theorem's hypotheses.
//!
//! Most families are constructive. Every absorbing pair (in either family)
//! has the form `(P·S·Q, P·T·Q)` with `P` of full column rank, `Q` of full
//! row rank and `S`, `T` invertible, because absorption forces the two
//! matrices to share their range and row space. Giving `P` and `Q` a block
//! structure matched to the partition then produces the range inclusions
//! between blocks that the inheritance theorems ask for:
//!
//! ```text
//!     P = [[P11, P12],      Q = [[Q11, Q12],       (columns of P and rows
//!          [P21, P22]]           [Q21, Q22]]        of Q split as a | b)
//! ```
//!
//! * `P12 = 0`, `Q21 = 0` puts `B` in the range of `A` and `C` in its row
//!   space; the mirrored zeros do the same for `D`.
//! * Additionally taking `P21 = P22·Z′` and `Q12 = Z·Q22` makes the pseudo
//!   Schur complement `F = P22·Σ·Q22`, with `Σ` the Schur complement of
//!   `S11` in `S`, which delivers the remaining conditions on `F`.
//! * `Q11 = K·P11ᵀ` makes `A` range symmetric.
//!
//! Whatever a construction promises, each emission is re-checked by the
//! checker that consumes it; candidates failing a hypothesis are discarded
//! and tallied by hypothesis name.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::absorption::{check_thm_schur_inherit_group, check_thm_schur_inherit_mp, SchurSide};
use crate::error::{Error, Histogram, Result};
use crate::geninv::group_inverse_exists;
use crate::pppt::{
    check_thm_inherit_pppt_group, check_thm_inherit_pppt_mp, check_thm_prinsub_group,
    check_thm_prinsub_mp, Pivot, Reading,
};
use crate::ratmat::{q, Matrix, Rational};
use crate::schur::{schur_f, schur_g, BlockMatrix};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Values entries are drawn from.
    pub entry_pool: Vec<Rational>,
    /// Largest row or column count of any generated matrix, including
    /// assembled block matrices.
    pub max_dim: usize,
    /// Candidates discarded per emission before giving up.
    pub max_rejects: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            entry_pool: default_pool(),
            max_dim: 4,
            max_rejects: 10_000,
        }
    }
}

/// Numerators `-3..=3` over denominators `{1, 2}`, deduplicated.
pub fn default_pool() -> Vec<Rational> {
    let mut pool: Vec<Rational> = (-3..=3)
        .flat_map(|n| [q(n, 1), q(n, 2)])
        .collect();
    pool.sort();
    pool.dedup();
    pool
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_dim == 0 {
            return Err(Error::Config("max_dim must be at least 1".into()));
        }
        if self.entry_pool.is_empty() {
            return Err(Error::Config("entry pool is empty".into()));
        }
        if self.max_rejects == 0 {
            return Err(Error::Config("max_rejects must be at least 1".into()));
        }
        Ok(())
    }

    /// Bound on assembled block matrices, which need at least two rows and
    /// columns to be partitioned into non-empty blocks.
    fn block_dim(&self) -> usize {
        self.max_dim.max(2)
    }
}

/// Which pseudo Schur complements are forced to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vanishing {
    /// `G = 0` and `F = 0`.
    G0F0,
    /// `G = 0` with `F ≠ 0`.
    G0Fnz,
    /// `F = 0` with `G ≠ 0`.
    F0Gnz,
    /// `L = 0` and `K = 0`, with all four blocks group invertible.
    L0K0,
}

/// Hypothesis sets of the inheritance theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inheritance {
    SchurMp(SchurSide),
    SchurGroup(SchurSide),
    PrinsubMp(Pivot),
    PrinsubGroup(Pivot),
    PpptMp(Pivot),
    PpptGroup(Pivot, Reading),
}

impl Inheritance {
    /// Runs the checker this kind of instance is generated for.
    pub fn check(&self, u: &BlockMatrix, v: &BlockMatrix) -> Result<Verdict> {
        match *self {
            Inheritance::SchurMp(side) => check_thm_schur_inherit_mp(u, v, side),
            Inheritance::SchurGroup(side) => check_thm_schur_inherit_group(u, v, side),
            Inheritance::PrinsubMp(p) => check_thm_prinsub_mp(u, v, p),
            Inheritance::PrinsubGroup(p) => check_thm_prinsub_group(u, v, p),
            Inheritance::PpptMp(p) => check_thm_inherit_pppt_mp(u, v, p),
            Inheritance::PpptGroup(p, r) => check_thm_inherit_pppt_group(u, v, p, r),
        }
    }

    fn needs_square_blocks(&self) -> bool {
        matches!(
            self,
            Inheritance::SchurGroup(_) | Inheritance::PrinsubGroup(_) | Inheritance::PpptGroup(..)
        )
    }
}

/// Zero pattern imposed on the shared factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pattern {
    /// `P12 = 0`, `Q21 = 0`; with `schur`, also `P21 = P22·Z′`, `Q12 = Z·Q22`.
    ADominant { schur: bool },
    /// Mirror image of `ADominant`.
    DDominant { schur: bool },
    /// All four off-diagonal factor blocks zero.
    Diagonal,
    /// No structure; hypotheses are met only by rejection.
    Free,
}

#[derive(Clone, Copy, Debug)]
struct Layout {
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
    a: usize,
    b: usize,
}

type Attempt<T> = std::result::Result<T, String>;

/// A deterministic instance stream.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    histogram: Histogram,
    discards: u64,
}

impl Generator {
    pub fn new(cfg: &GenConfig) -> Result<Self> {
        Self::with_stream(cfg, 0)
    }

    /// An independent stream seeded with `cfg.seed ^ stream`.
    pub fn with_stream(cfg: &GenConfig, stream: u64) -> Result<Self> {
        cfg.validate()?;
        Ok(Generator {
            cfg: cfg.clone(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ stream),
            histogram: Histogram::new(),
            discards: 0,
        })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    /// Discarded candidates by reason, over the generator's lifetime.
    pub fn histogram(&self) -> &Histogram {
        &self.histogram
    }

    pub fn discards(&self) -> u64 {
        self.discards
    }

    fn retry<T>(&mut self, mut attempt: impl FnMut(&mut Self) -> Attempt<T>) -> Result<T> {
        let mut local = 0;
        loop {
            match attempt(self) {
                Ok(x) => return Ok(x),
                Err(reason) => {
                    self.discards += 1;
                    *self.histogram.entry(reason).or_insert(0) += 1;
                    local += 1;
                    if local >= self.cfg.max_rejects {
                        return Err(Error::GenerationFailed {
                            seed: self.cfg.seed,
                            discards: local,
                            histogram: self.histogram.clone(),
                        });
                    }
                }
            }
        }
    }

    fn entry(&mut self) -> Rational {
        let i = self.rng.gen_range(0..self.cfg.entry_pool.len());
        self.cfg.entry_pool[i].clone()
    }

    fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn dim(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// A dimension in `1..=max_dim`.
    pub fn gen_dim(&mut self) -> usize {
        self.dim(1, self.cfg.max_dim)
    }

    /// Entries drawn independently from the pool.
    pub fn gen_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.entry()).collect();
        Matrix::from_vec(rows, cols, data).expect("length matches shape")
    }

    fn try_full_rank(&mut self, rows: usize, cols: usize) -> Attempt<Matrix> {
        let m = self.gen_matrix(rows, cols);
        if m.rank() == rows.min(cols) {
            Ok(m)
        } else {
            Err("rank-deficient factor".into())
        }
    }

    fn try_invertible(&mut self, n: usize) -> Attempt<Matrix> {
        self.try_full_rank(n, n)
    }

    /// A rank between 0 and `max`, at least 1 with probability 0.9 when
    /// possible, so degenerate instances appear without dominating.
    fn rank_up_to(&mut self, max: usize) -> usize {
        if max == 0 || self.coin(0.1) {
            self.dim(0, max)
        } else {
            self.dim(1, max)
        }
    }

    /// `P·Q` with full-rank factors, so the rank is exactly `r`.
    pub fn gen_rank_r(&mut self, rows: usize, cols: usize, r: usize) -> Result<Matrix> {
        if r > rows.min(cols) {
            return Err(Error::Config(format!(
                "rank {r} exceeds the dimensions {rows}x{cols}"
            )));
        }
        self.retry(|g| {
            let p = g.try_full_rank(rows, r)?;
            let q = g.try_full_rank(r, cols)?;
            Ok(&p * &q)
        })
    }

    pub fn gen_invertible(&mut self, n: usize) -> Result<Matrix> {
        self.retry(|g| g.try_invertible(n))
    }

    /// A matrix of random shape (each side at most `max_dim`), either with
    /// independent entries or of a random lower rank.
    pub fn gen_sample_matrix(&mut self) -> Result<Matrix> {
        let rows = self.dim(1, self.cfg.max_dim);
        let cols = self.dim(1, self.cfg.max_dim);
        self.gen_sample_of_shape(rows, cols)
    }

    pub fn gen_sample_of_shape(&mut self, rows: usize, cols: usize) -> Result<Matrix> {
        if self.coin(0.5) {
            Ok(self.gen_matrix(rows, cols))
        } else {
            let r = self.dim(0, rows.min(cols));
            self.gen_rank_r(rows, cols, r)
        }
    }

    fn try_shared_factors(&mut self, rows: usize, cols: usize) -> Attempt<(Matrix, Matrix, usize)> {
        let r = self.rank_up_to(rows.min(cols));
        let p = self.try_full_rank(rows, r)?;
        let q = self.try_full_rank(r, cols)?;
        Ok((p, q, r))
    }

    /// A Moore-Penrose absorbing pair `(P·S·Q, P·T·Q)`.
    pub fn gen_mp_absorbing_pair(&mut self, rows: usize, cols: usize) -> Result<(Matrix, Matrix)> {
        self.retry(|g| {
            let (p, q, r) = g.try_shared_factors(rows, cols)?;
            let s = g.try_invertible(r)?;
            let t = g.try_invertible(r)?;
            Ok((&(&p * &s) * &q, &(&p * &t) * &q))
        })
    }

    /// A group absorbing pair; `Q·P` is required to be invertible, which is
    /// exactly when both members are group invertible.
    pub fn gen_group_absorbing_pair(&mut self, n: usize) -> Result<(Matrix, Matrix)> {
        self.retry(|g| {
            let (p, q, r) = g.try_shared_factors(n, n)?;
            if (&q * &p).rank() < r {
                return Err("Q·P singular (no group inverse)".into());
            }
            let s = g.try_invertible(r)?;
            let t = g.try_invertible(r)?;
            Ok((&(&p * &s) * &q, &(&p * &t) * &q))
        })
    }

    fn try_mixed_pair(&mut self, rows: usize, cols: usize) -> Attempt<(Matrix, Matrix)> {
        let (p, q, r) = self.try_shared_factors(rows, cols)?;
        let s = self.try_invertible(r)?;
        let a = &(&p * &s) * &q;
        let b = match self.dim(0, 4) {
            0 | 1 => {
                let t = self.try_invertible(r)?;
                &(&p * &t) * &q
            }
            // Same range, unrelated row space (and possibly another rank).
            2 => {
                let r2 = self.dim(0, r);
                let m = self.gen_matrix(r, r2);
                let q2 = self.try_full_rank(r2, cols)?;
                &(&p * &m) * &q2
            }
            // Same row space, unrelated range.
            3 => {
                let r2 = self.dim(0, r);
                let m = self.gen_matrix(r2, r);
                let p2 = self.try_full_rank(rows, r2)?;
                &(&p2 * &m) * &q
            }
            _ => self.gen_matrix(rows, cols),
        };
        Ok(if self.coin(0.5) { (a, b) } else { (b, a) })
    }

    /// A pair that is absorbing about 40% of the time; the rest share only
    /// a range, only a row space, or nothing.
    pub fn gen_mixed_pair(&mut self, rows: usize, cols: usize) -> Result<(Matrix, Matrix)> {
        self.retry(|g| g.try_mixed_pair(rows, cols))
    }

    /// Like [`Generator::gen_mixed_pair`], restricted to pairs of group
    /// invertible matrices.
    pub fn gen_mixed_group_pair(&mut self, n: usize) -> Result<(Matrix, Matrix)> {
        self.retry(|g| {
            let (a, b) = g.try_mixed_pair(n, n)?;
            let ok = |m: &Matrix| group_inverse_exists(m).unwrap_or(false);
            if ok(&a) && ok(&b) {
                Ok((a, b))
            } else {
                Err("member without group inverse".into())
            }
        })
    }

    /// `X (XᵀX)⁻¹ Xᵀ` for a random full-column-rank `X`.
    pub fn gen_orthogonal_projector(&mut self, n: usize) -> Result<Matrix> {
        let r = self.dim(0, n);
        self.retry(|g| {
            let x = g.try_full_rank(n, r)?;
            let xt = x.transpose();
            let gram = (&xt * &x).inverse().expect("full column rank");
            Ok(&(&x * &gram) * &xt)
        })
    }

    /// `X (YᵀX)⁻¹ Yᵀ`, an oblique projector.
    pub fn gen_idempotent(&mut self, n: usize) -> Result<Matrix> {
        let r = self.dim(0, n);
        self.retry(|g| {
            let x = g.try_full_rank(n, r)?;
            let yt = g.try_full_rank(r, n)?;
            let core = (&yt * &x).inverse().ok_or("YᵀX singular")?;
            Ok(&(&x * &core) * &yt)
        })
    }

    /// Three same-shape matrices; half the time they share factors, so the
    /// relation chains `A ~ B ~ C` and transitivity is exercised.
    pub fn gen_relation_triple(&mut self, rows: usize, cols: usize, group: bool) -> Result<[Matrix; 3]> {
        self.retry(|g| {
            let triple = if g.coin(0.5) {
                let (p, q, r) = g.try_shared_factors(rows, cols)?;
                let mut out = Vec::with_capacity(3);
                for _ in 0..3 {
                    let s = g.try_invertible(r)?;
                    out.push(&(&p * &s) * &q);
                }
                [out[0].clone(), out[1].clone(), out[2].clone()]
            } else {
                let (a, b) = g.try_mixed_pair(rows, cols)?;
                let (_, c) = g.try_mixed_pair(rows, cols)?;
                [a, b, c]
            };
            if group && !triple.iter().all(|m| group_inverse_exists(m).unwrap_or(false)) {
                return Err("member without group inverse".into());
            }
            Ok(triple)
        })
    }

    fn rect_partition(&mut self) -> (usize, usize, usize, usize) {
        let d = self.cfg.block_dim();
        let m1 = self.dim(1, d - 1);
        let m2 = self.dim(1, d - m1);
        let n1 = self.dim(1, d - 1);
        let n2 = self.dim(1, d - n1);
        (m1, m2, n1, n2)
    }

    fn square_partition(&mut self) -> (usize, usize) {
        let d = self.cfg.block_dim();
        let k1 = self.dim(1, d - 1);
        let k2 = self.dim(1, d - k1);
        (k1, k2)
    }

    /// Block matrices with prescribed vanishing pseudo Schur complements.
    pub fn gen_vanishing_schur(&mut self, want: Vanishing) -> Result<BlockMatrix> {
        match want {
            Vanishing::G0F0 => self.retry(|g| g.try_g0_f0()),
            Vanishing::G0Fnz => self.retry(|g| g.try_g0_fnz()),
            Vanishing::F0Gnz => self.retry(|g| g.try_f0_gnz()),
            Vanishing::L0K0 => self.retry(|g| g.try_l0_k0()),
        }
    }

    /// `A = P·S·Q`, `D = W·(U·S⁻¹·T)·R`, `B = P·T·R + (I−PP†)X(I−R†R)`,
    /// `C = W·U·Q + (I−WW†)Y(I−Q†Q)`: then `C·A†·B = D` and `B·D†·C = A`.
    fn try_g0_f0(&mut self) -> Attempt<BlockMatrix> {
        let (m1, m2, n1, n2) = self.rect_partition();
        let r = self.rank_up_to(m1.min(n1).min(m2).min(n2));
        let p = self.try_full_rank(m1, r)?;
        let q = self.try_full_rank(r, n1)?;
        let w = self.try_full_rank(m2, r)?;
        let rr = self.try_full_rank(r, n2)?;
        let s = self.try_invertible(r)?;
        let t = self.try_invertible(r)?;
        let u = self.try_invertible(r)?;
        let v = &(&u * &s.inverse().expect("invertible")) * &t;
        let mut b = &(&p * &t) * &rr;
        let mut c = &(&w * &u) * &q;
        if self.coin(0.5) {
            let x = self.gen_matrix(m1, n2);
            let y = self.gen_matrix(m2, n1);
            let left = |f: &Matrix| &Matrix::identity(f.rows()) - &(f * &f.pinv());
            let right = |f: &Matrix| &Matrix::identity(f.cols()) - &(&f.pinv() * f);
            b = &b + &(&(&left(&p) * &x) * &right(&rr));
            c = &c + &(&(&left(&w) * &y) * &right(&q));
        }
        let m = BlockMatrix::new(&(&p * &s) * &q, b, c, &(&w * &v) * &rr).expect("shapes tile");
        if !schur_f(&m).is_zero() || !schur_g(&m).is_zero() {
            return Err("construction left F or G nonzero".into());
        }
        Ok(m)
    }

    fn try_g0_fnz(&mut self) -> Attempt<BlockMatrix> {
        let (m1, m2, n1, n2) = self.rect_partition();
        let b = self.gen_matrix(m1, n2);
        let c = self.gen_matrix(m2, n1);
        let r = self.rank_up_to(m2.min(n2));
        let p = self.try_full_rank(m2, r)?;
        let q = self.try_full_rank(r, n2)?;
        let d = &p * &q;
        let a = &(&b * &d.pinv()) * &c;
        let m = BlockMatrix::new(a, b, c, d).expect("shapes tile");
        if schur_f(&m).is_zero() {
            return Err("F vanished".into());
        }
        Ok(m)
    }

    fn try_f0_gnz(&mut self) -> Attempt<BlockMatrix> {
        let (m1, m2, n1, n2) = self.rect_partition();
        let b = self.gen_matrix(m1, n2);
        let c = self.gen_matrix(m2, n1);
        let r = self.rank_up_to(m1.min(n1));
        let p = self.try_full_rank(m1, r)?;
        let q = self.try_full_rank(r, n1)?;
        let a = &p * &q;
        let d = &(&c * &a.pinv()) * &b;
        let m = BlockMatrix::new(a, b, c, d).expect("shapes tile");
        if schur_g(&m).is_zero() {
            return Err("G vanished".into());
        }
        Ok(m)
    }

    /// The sharp analogue of [`Generator::try_g0_f0`] without the
    /// correction terms, on square blocks of one size. The four blocks are
    /// group invertible exactly when `Q·P`, `R·P`, `Q·W`, `R·W` are
    /// invertible.
    fn try_l0_k0(&mut self) -> Attempt<BlockMatrix> {
        let k = self.dim(1, (self.cfg.block_dim() / 2).max(1));
        let r = self.rank_up_to(k);
        let p = self.try_full_rank(k, r)?;
        let q = self.try_full_rank(r, k)?;
        let w = self.try_full_rank(k, r)?;
        let rr = self.try_full_rank(r, k)?;
        for (name, x, y) in [("Q·P", &q, &p), ("R·P", &rr, &p), ("Q·W", &q, &w), ("R·W", &rr, &w)] {
            if (x * y).rank() < r {
                return Err(format!("{name} singular (block without group inverse)"));
            }
        }
        let s = self.try_invertible(r)?;
        let t = self.try_invertible(r)?;
        let u = self.try_invertible(r)?;
        let v = &(&u * &s.inverse().expect("invertible")) * &t;
        let m = BlockMatrix::new(
            &(&p * &s) * &q,
            &(&p * &t) * &rr,
            &(&w * &u) * &q,
            &(&w * &v) * &rr,
        )
        .expect("shapes tile");
        let pair = crate::schur::sharp_pair(&m).map_err(|e| e.to_string())?;
        if !pair.first.is_zero() || !pair.second.is_zero() {
            return Err("construction left K or L nonzero".into());
        }
        Ok(m)
    }

    /// A pair `(U, V)` satisfying every hypothesis of the given theorem.
    pub fn gen_inheritance_instance(&mut self, kind: Inheritance) -> Result<(BlockMatrix, BlockMatrix)> {
        self.retry(|g| {
            let (u, v) = g.try_structured_pair(kind)?;
            let verdict = kind.check(&u, &v).map_err(|e| e.to_string())?;
            match verdict.failing_hypotheses().first() {
                None => Ok((u, v)),
                Some(name) => Err(format!("hypothesis: {name}")),
            }
        })
    }

    fn pattern_for(&mut self, kind: Inheritance) -> Pattern {
        if self.coin(0.125) {
            return Pattern::Free;
        }
        match kind {
            Inheritance::SchurMp(SchurSide::Pivot) | Inheritance::SchurGroup(SchurSide::Pivot) => {
                Pattern::ADominant { schur: true }
            }
            Inheritance::SchurMp(SchurSide::Complement)
            | Inheritance::SchurGroup(SchurSide::Complement) => Pattern::DDominant { schur: true },
            Inheritance::PrinsubMp(Pivot::A) | Inheritance::PrinsubGroup(Pivot::A) => {
                Pattern::ADominant { schur: false }
            }
            Inheritance::PrinsubMp(Pivot::D) | Inheritance::PrinsubGroup(Pivot::D) => {
                Pattern::DDominant { schur: false }
            }
            Inheritance::PpptMp(_) | Inheritance::PpptGroup(..) => Pattern::Diagonal,
        }
    }

    fn layout_for(&mut self, kind: Inheritance) -> Layout {
        let (m1, m2, n1, n2) = match kind {
            k if k.needs_square_blocks() => {
                let (k1, k2) = self.square_partition();
                (k1, k2, k1, k2)
            }
            // Range symmetry needs a square pivot block.
            Inheritance::PpptMp(Pivot::A) => {
                let (k1, m2) = self.square_partition();
                let n2 = self.dim(1, self.cfg.block_dim() - k1);
                (k1, m2, k1, n2)
            }
            Inheritance::PpptMp(Pivot::D) => {
                let (m1, k2) = self.square_partition();
                let n1 = self.dim(1, self.cfg.block_dim() - k2);
                (m1, k2, n1, k2)
            }
            _ => self.rect_partition(),
        };
        let a = self.rank_up_to(m1.min(n1));
        let b = self.rank_up_to(m2.min(n2));
        Layout { m1, m2, n1, n2, a, b }
    }

    /// An invertible `S` whose leading (`need11`) and trailing (`need22`)
    /// diagonal blocks are invertible too.
    fn try_mixer(&mut self, a: usize, b: usize, need11: bool, need22: bool) -> Attempt<Matrix> {
        let s = self.try_invertible(a + b)?;
        if need11 && s.submatrix(0..a, 0..a).rank() < a {
            return Err("mixer leading block singular".into());
        }
        if need22 && s.submatrix(a..a + b, a..a + b).rank() < b {
            return Err("mixer trailing block singular".into());
        }
        Ok(s)
    }

    fn try_structured_pair(&mut self, kind: Inheritance) -> Attempt<(BlockMatrix, BlockMatrix)> {
        let pattern = self.pattern_for(kind);
        let lay = self.layout_for(kind);
        let Layout { m1, m2, n1, n2, a, b } = lay;
        let (rs_a, rs_d) = match kind {
            Inheritance::PpptMp(Pivot::A) => (true, false),
            Inheritance::PpptMp(Pivot::D) => (false, true),
            _ => (false, false),
        };

        let (p, q) = if pattern == Pattern::Free {
            (self.try_full_rank(m1 + m2, a + b)?, self.try_full_rank(a + b, n1 + n2)?)
        } else {
            let p11 = self.try_full_rank(m1, a)?;
            let p22 = self.try_full_rank(m2, b)?;
            let q11 = if rs_a && self.coin(0.9) {
                &self.try_invertible(a)? * &p11.transpose()
            } else {
                self.try_full_rank(a, n1)?
            };
            let q22 = if rs_d && self.coin(0.9) {
                &self.try_invertible(b)? * &p22.transpose()
            } else {
                self.try_full_rank(b, n2)?
            };
            let (p12, p21, q12, q21) = match pattern {
                Pattern::ADominant { schur } => {
                    let (p21, q12) = if schur {
                        (&p22 * &self.gen_matrix(b, a), &self.gen_matrix(a, b) * &q22)
                    } else {
                        (self.gen_matrix(m2, a), self.gen_matrix(a, n2))
                    };
                    (Matrix::zeros(m1, b), p21, q12, Matrix::zeros(b, n1))
                }
                Pattern::DDominant { schur } => {
                    let (p12, q21) = if schur {
                        (&p11 * &self.gen_matrix(a, b), &self.gen_matrix(b, a) * &q11)
                    } else {
                        (self.gen_matrix(m1, b), self.gen_matrix(b, n1))
                    };
                    (p12, Matrix::zeros(m2, a), Matrix::zeros(a, n2), q21)
                }
                _ => (
                    Matrix::zeros(m1, b),
                    Matrix::zeros(m2, a),
                    Matrix::zeros(a, n2),
                    Matrix::zeros(b, n1),
                ),
            };
            let p = BlockMatrix::new(p11, p12, p21, p22).expect("tiles").assemble();
            let q = BlockMatrix::new(q11, q12, q21, q22).expect("tiles").assemble();
            if p.rank() < a + b || q.rank() < a + b {
                return Err("rank-deficient factor".into());
            }
            (p, q)
        };

        let (need11, need22) = match pattern {
            Pattern::ADominant { .. } => (true, false),
            Pattern::DDominant { .. } => (false, true),
            Pattern::Diagonal => (true, true),
            Pattern::Free => (false, false),
        };
        let s = self.try_mixer(a, b, need11, need22)?;
        let t = if self.coin(0.05) {
            s.clone()
        } else {
            self.try_mixer(a, b, need11, need22)?
        };
        let split = |x: Matrix| BlockMatrix::split(&x, m1, n1).expect("partition fits");
        let u = split(&(&p * &s) * &q);
        let v = split(&(&p * &t) * &q);
        Ok((u, v))
    }
}
