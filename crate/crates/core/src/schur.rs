//! Block matrices, pseudo Schur complements and the vanishing-complement
//! theorems.
//!
//! For `M = [[A, B], [C, D]]`:
//!
//! | symbol | definition     | family  |
//! |--------|----------------|---------|
//! | `F`    | `D − C·A†·B`   | dagger  |
//! | `G`    | `A − B·D†·C`   | dagger  |
//! | `K`    | `D − C·A#·B`   | sharp   |
//! | `L`    | `A − B·D#·C`   | sharp   |

use std::fmt;

use crate::error::{Error, Result};
use crate::geninv::is_12_inverse;
use crate::ratmat::Matrix;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    A,
    B,
    C,
    D,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::A, Block::B, Block::C, Block::D];
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Block::A => "A",
            Block::B => "B",
            Block::C => "C",
            Block::D => "D",
        };
        f.write_str(s)
    }
}

/// `[[A, B], [C, D]]` with `A: m1 x n1`, `B: m1 x n2`, `C: m2 x n1`,
/// `D: m2 x n2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
}

impl BlockMatrix {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Self> {
        let ok = a.rows() == b.rows()
            && c.rows() == d.rows()
            && a.cols() == c.cols()
            && b.cols() == d.cols();
        if !ok {
            return Err(Error::Partition(format!(
                "blocks {}x{}, {}x{}, {}x{}, {}x{} do not tile",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(BlockMatrix { a, b, c, d })
    }

    /// Splits `m` after row `m1` and column `n1`.
    pub fn split(m: &Matrix, m1: usize, n1: usize) -> Result<Self> {
        let (rows, cols) = m.shape();
        if m1 > rows || n1 > cols {
            return Err(Error::Partition(format!(
                "cannot split {rows}x{cols} after row {m1} and column {n1}"
            )));
        }
        Ok(BlockMatrix {
            a: m.submatrix(0..m1, 0..n1),
            b: m.submatrix(0..m1, n1..cols),
            c: m.submatrix(m1..rows, 0..n1),
            d: m.submatrix(m1..rows, n1..cols),
        })
    }

    pub fn assemble(&self) -> Matrix {
        let top = self.a.hstack(&self.b).expect("validated partition");
        let bottom = self.c.hstack(&self.d).expect("validated partition");
        top.vstack(&bottom).expect("validated partition")
    }

    /// `(m1, m2, n1, n2)`.
    pub fn partition(&self) -> (usize, usize, usize, usize) {
        (self.a.rows(), self.c.rows(), self.a.cols(), self.b.cols())
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn block(&self, which: Block) -> &Matrix {
        match which {
            Block::A => &self.a,
            Block::B => &self.b,
            Block::C => &self.c,
            Block::D => &self.d,
        }
    }

    /// Replaces one block; the new block must have the old block's shape.
    pub fn with_block(&self, which: Block, m: Matrix) -> Result<Self> {
        let old = self.block(which);
        if old.shape() != m.shape() {
            return Err(Error::Dimension {
                op: "with_block",
                left: old.shape(),
                right: m.shape(),
            });
        }
        let mut out = self.clone();
        match which {
            Block::A => out.a = m,
            Block::B => out.b = m,
            Block::C => out.c = m,
            Block::D => out.d = m,
        }
        Ok(out)
    }

    /// Block-wise transpose: `Mᵀ = [[Aᵀ, Cᵀ], [Bᵀ, Dᵀ]]`.
    pub fn transpose(&self) -> Self {
        BlockMatrix {
            a: self.a.transpose(),
            b: self.c.transpose(),
            c: self.b.transpose(),
            d: self.d.transpose(),
        }
    }

    /// Group inverses of all four blocks, naming the first that has none.
    pub(crate) fn sharp_blocks(&self, label: &str) -> Result<[Matrix; 4]> {
        let inv = |which: Block| {
            self.block(which)
                .ginv()
                .map_err(|e| e.in_block(&format!("{which}{label}")))
        };
        Ok([inv(Block::A)?, inv(Block::B)?, inv(Block::C)?, inv(Block::D)?])
    }
}

/// A pseudo Schur complement and its complementary partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurPair {
    /// `F` (dagger) or `K` (sharp): the complement of `A`, shaped like `D`.
    pub first: Matrix,
    /// `G` (dagger) or `L` (sharp): the complement of `D`, shaped like `A`.
    pub second: Matrix,
}

/// `F = D − C·A†·B`.
pub fn schur_f(m: &BlockMatrix) -> Matrix {
    &m.d - &(&(&m.c * &m.a.pinv()) * &m.b)
}

/// `G = A − B·D†·C`.
pub fn schur_g(m: &BlockMatrix) -> Matrix {
    &m.a - &(&(&m.b * &m.d.pinv()) * &m.c)
}

/// `K = D − C·A#·B`.
pub fn schur_k(m: &BlockMatrix) -> Result<Matrix> {
    let a_sharp = m.a.ginv().map_err(|e| e.in_block("A"))?;
    Ok(&m.d - &(&(&m.c * &a_sharp) * &m.b))
}

/// `L = A − B·D#·C`.
pub fn schur_l(m: &BlockMatrix) -> Result<Matrix> {
    let d_sharp = m.d.ginv().map_err(|e| e.in_block("D"))?;
    Ok(&m.a - &(&(&m.b * &d_sharp) * &m.c))
}

pub fn dagger_pair(m: &BlockMatrix) -> SchurPair {
    SchurPair {
        first: schur_f(m),
        second: schur_g(m),
    }
}

pub fn sharp_pair(m: &BlockMatrix) -> Result<SchurPair> {
    Ok(SchurPair {
        first: schur_k(m)?,
        second: schur_l(m)?,
    })
}

fn eye_minus(p: &Matrix) -> Matrix {
    &Matrix::identity(p.rows()) - p
}

/// Both pseudo Schur complements vanishing forces the reverse order laws
/// `(B·D†·C)† = C†·D·B†` and `(C·A†·B)† = B†·A·C†`.
pub fn check_thm_revlaw_mp(m: &BlockMatrix) -> Verdict {
    let (f, g) = (schur_f(m), schur_g(m));
    let v = Verdict::new()
        .hyp("F = 0", f.is_zero())
        .hyp("G = 0", g.is_zero())
        .witness("F", &f)
        .witness("G", &g);
    if !v.hypotheses_hold() {
        return v;
    }
    let (ap, bp, cp, dp) = (m.a.pinv(), m.b.pinv(), m.c.pinv(), m.d.pinv());
    let law_i = (&(&m.b * &dp) * &m.c).pinv() == &(&cp * &m.d) * &bp;
    let law_ii = (&(&m.c * &ap) * &m.b).pinv() == &(&bp * &m.a) * &cp;
    v.concl("(BD†C)† = C†DB†", law_i)
        .concl("(CA†B)† = B†AC†", law_ii)
}

/// Given `G = 0`: `F = 0` iff `(I − CC†)D = 0`, `D(I − B†B) = 0` and
/// `(BD†C)† = C†DB†`. Both sides are evaluated independently.
pub fn check_thm_g_implies_f(m: &BlockMatrix) -> Verdict {
    let (f, g) = (schur_f(m), schur_g(m));
    let v = Verdict::new()
        .hyp("G = 0", g.is_zero())
        .witness("F", &f)
        .witness("G", &g);
    if !v.hypotheses_hold() {
        return v;
    }
    let (bp, cp, dp) = (m.b.pinv(), m.c.pinv(), m.d.pinv());
    let lhs = f.is_zero();
    let r1 = (&eye_minus(&(&m.c * &cp)) * &m.d).is_zero();
    let r2 = (&m.d * &eye_minus(&(&bp * &m.b))).is_zero();
    let r3 = (&(&m.b * &dp) * &m.c).pinv() == &(&cp * &m.d) * &bp;
    v.atom("F = 0", lhs)
        .atom("(I-CC†)D = 0", r1)
        .atom("D(I-B†B) = 0", r2)
        .atom("(BD†C)† = C†DB†", r3)
        .conclude(lhs == (r1 && r2 && r3))
}

/// Given `F = 0`: `G = 0` iff `(I − BB†)A = 0`, `A(I − C†C) = 0` and
/// `(CA†B)† = B†AC†`.
pub fn check_thm_f_implies_g(m: &BlockMatrix) -> Verdict {
    let (f, g) = (schur_f(m), schur_g(m));
    let v = Verdict::new()
        .hyp("F = 0", f.is_zero())
        .witness("F", &f)
        .witness("G", &g);
    if !v.hypotheses_hold() {
        return v;
    }
    let (ap, bp, cp) = (m.a.pinv(), m.b.pinv(), m.c.pinv());
    let lhs = g.is_zero();
    let r1 = (&eye_minus(&(&m.b * &bp)) * &m.a).is_zero();
    let r2 = (&m.a * &eye_minus(&(&cp * &m.c))).is_zero();
    let r3 = (&(&m.c * &ap) * &m.b).pinv() == &(&bp * &m.a) * &cp;
    v.atom("G = 0", lhs)
        .atom("(I-BB†)A = 0", r1)
        .atom("A(I-C†C) = 0", r2)
        .atom("(CA†B)† = B†AC†", r3)
        .conclude(lhs == (r1 && r2 && r3))
}

struct SharpParts {
    k: Matrix,
    l: Matrix,
    a_s: Matrix,
    b_s: Matrix,
    c_s: Matrix,
    d_s: Matrix,
}

fn sharp_parts(m: &BlockMatrix) -> Result<SharpParts> {
    let [a_s, b_s, c_s, d_s] = m.sharp_blocks("")?;
    let k = &m.d - &(&(&m.c * &a_s) * &m.b);
    let l = &m.a - &(&(&m.b * &d_s) * &m.c);
    Ok(SharpParts {
        k,
        l,
        a_s,
        b_s,
        c_s,
        d_s,
    })
}

/// `C#·D·B# ∈ (B·D#·C){1,2}`.
fn sharp_law_i(m: &BlockMatrix, p: &SharpParts) -> bool {
    let y = &(&p.c_s * &m.d) * &p.b_s;
    let x = &(&m.b * &p.d_s) * &m.c;
    is_12_inverse(&y, &x).expect("square blocks of equal size")
}

/// `B#·A·C# ∈ (C·A#·B){1,2}`.
fn sharp_law_ii(m: &BlockMatrix, p: &SharpParts) -> bool {
    let y = &(&p.b_s * &m.a) * &p.c_s;
    let x = &(&m.c * &p.a_s) * &m.b;
    is_12_inverse(&y, &x).expect("square blocks of equal size")
}

/// With all four blocks group invertible, `K = 0` and `L = 0` give
/// `C#DB# ∈ (BD#C){1,2}` and `B#AC# ∈ (CA#B){1,2}`.
pub fn check_thm_revlaw_group(m: &BlockMatrix) -> Result<Verdict> {
    let p = sharp_parts(m)?;
    let v = Verdict::new()
        .hyp("K = 0", p.k.is_zero())
        .hyp("L = 0", p.l.is_zero())
        .witness("K", &p.k)
        .witness("L", &p.l);
    if !v.hypotheses_hold() {
        return Ok(v);
    }
    Ok(v.concl("C#DB# ∈ (BD#C){1,2}", sharp_law_i(m, &p))
        .concl("B#AC# ∈ (CA#B){1,2}", sharp_law_ii(m, &p)))
}

/// Given `L = 0`, `K = 0` implies `(I − CC#)D = 0`, `D(I − B#B) = 0` and
/// `C#DB# ∈ (BD#C){1,2}`. Only this direction is asserted; the conclusion
/// atoms are evaluated even when the hypotheses fail so that instances
/// refuting the converse can be recognized.
pub fn check_thm_l_implies_k(m: &BlockMatrix) -> Result<Verdict> {
    let p = sharp_parts(m)?;
    Ok(Verdict::new()
        .hyp("L = 0", p.l.is_zero())
        .hyp("K = 0", p.k.is_zero())
        .concl(
            "(I-CC#)D = 0",
            (&eye_minus(&(&m.c * &p.c_s)) * &m.d).is_zero(),
        )
        .concl(
            "D(I-B#B) = 0",
            (&m.d * &eye_minus(&(&p.b_s * &m.b))).is_zero(),
        )
        .concl("C#DB# ∈ (BD#C){1,2}", sharp_law_i(m, &p))
        .witness("K", &p.k)
        .witness("L", &p.l))
}

/// Given `K = 0`, `L = 0` implies `(I − BB#)A = 0`, `A(I − C#C) = 0` and
/// `B#AC# ∈ (CA#B){1,2}`. One-directional, like [`check_thm_l_implies_k`].
pub fn check_thm_k_implies_l(m: &BlockMatrix) -> Result<Verdict> {
    let p = sharp_parts(m)?;
    Ok(Verdict::new()
        .hyp("K = 0", p.k.is_zero())
        .hyp("L = 0", p.l.is_zero())
        .concl(
            "(I-BB#)A = 0",
            (&eye_minus(&(&m.b * &p.b_s)) * &m.a).is_zero(),
        )
        .concl(
            "A(I-C#C) = 0",
            (&m.a * &eye_minus(&(&p.c_s * &m.c))).is_zero(),
        )
        .concl("B#AC# ∈ (CA#B){1,2}", sharp_law_ii(m, &p))
        .witness("K", &p.k)
        .witness("L", &p.l))
}

/// Whether `C#·D·B# = (B·D#·C)#` and `B#·A·C# = (C·A#·B)#` on a given block
/// matrix. `None` when a required group inverse does not exist.
pub fn sharp_reverse_order_equalities(m: &BlockMatrix) -> Result<(Option<bool>, Option<bool>)> {
    let p = sharp_parts(m)?;
    let x1 = &(&m.b * &p.d_s) * &m.c;
    let y1 = &(&p.c_s * &m.d) * &p.b_s;
    let x2 = &(&m.c * &p.a_s) * &m.b;
    let y2 = &(&p.b_s * &m.a) * &p.c_s;
    let eq = |x: &Matrix, y: &Matrix| x.ginv().ok().map(|xs| xs == *y);
    Ok((eq(&x1, &y1), eq(&x2, &y2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Outcome;
    use crate::{matrix, q};

    /// The worked example with a vanishing complementary complement.
    fn schur_example() -> BlockMatrix {
        BlockMatrix::new(
            matrix![[-2, 1], [-2, 1]],
            matrix![[1, 1], [1, 1]],
            matrix![[2, -1], [-1, 2]],
            matrix![[-1, -1], [0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn split_assemble_round_trip() {
        let m = matrix![[1, 2, 3], [4, 5, 6], [7, 8, 9]];
        let b = BlockMatrix::split(&m, 1, 2).unwrap();
        assert_eq!(b.partition(), (1, 2, 2, 1));
        assert_eq!(b.b(), &matrix![[3]]);
        assert_eq!(b.assemble(), m);
        assert!(BlockMatrix::split(&m, 4, 0).is_err());
        let empty = BlockMatrix::split(&m, 0, 3).unwrap();
        assert_eq!(empty.assemble(), m);
    }

    #[test]
    fn new_rejects_misaligned_blocks() {
        let e = BlockMatrix::new(
            Matrix::zeros(1, 1),
            Matrix::zeros(2, 1),
            Matrix::zeros(1, 1),
            Matrix::zeros(1, 1),
        );
        assert!(matches!(e, Err(Error::Partition(_))));
    }

    #[test]
    fn f_reduces_to_d_without_coupling() {
        let d = matrix![[3, "1/2"], [1, 0]];
        let m = BlockMatrix::new(
            matrix![[1, 2], [2, 4]],
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
            d.clone(),
        )
        .unwrap();
        assert_eq!(schur_f(&m), d);
        assert_eq!(schur_k(&m).unwrap(), d);
    }

    #[test]
    fn degenerate_pivot_example_has_zero_f() {
        let m = BlockMatrix::new(
            matrix![["1/2", "1/2"], [-2, 1]],
            Matrix::zeros(2, 1),
            Matrix::zeros(1, 2),
            Matrix::zeros(1, 1),
        )
        .unwrap();
        assert_eq!(schur_f(&m), Matrix::zeros(1, 1));
    }

    #[test]
    fn sharp_complements_of_schur_example() {
        // Exact group inverses: A^# = A, D^# = D.
        let m = schur_example();
        assert_eq!(schur_l(&m).unwrap(), matrix![[-1, 2], [-1, 2]]);
        assert_eq!(schur_k(&m).unwrap(), matrix![[0, 0], [1, 1]]);
    }

    #[test]
    fn dagger_complements_reproduce_printed_values() {
        let m = schur_example();
        assert_eq!(schur_g(&m), Matrix::zeros(2, 2));
        assert_eq!(schur_f(&m), matrix![[0, 0], [1, 1]].scale(&q(-4, 5)));
    }

    #[test]
    fn schur_k_with_zero_c_is_d() {
        let d = matrix![[2, 0], [1, 1]];
        let m = BlockMatrix::new(
            matrix![[1, 1], [0, 0]],
            matrix![[1, 2], [0, 0]],
            Matrix::zeros(2, 2),
            d.clone(),
        )
        .unwrap();
        assert_eq!(schur_k(&m).unwrap(), d);
    }

    #[test]
    fn schur_k_names_the_block() {
        let m = BlockMatrix::new(
            matrix![[0, 1], [0, 0]],
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        let err = schur_k(&m).unwrap_err();
        assert!(matches!(err, Error::NoGroupInverse { block: Some(ref b), .. } if b == "A"));
    }

    #[test]
    fn classical_schur_for_invertible_pivot() {
        let m = BlockMatrix::split(&matrix![[2, 1, 1], [1, 1, 0], [3, 0, 5]], 2, 2).unwrap();
        let a_inv = crate::ratmat::solve_exact(m.a(), &Matrix::identity(2))
            .unwrap()
            .unwrap();
        let classical = m.d() - &(&(m.c() * &a_inv) * m.b());
        assert_eq!(schur_f(&m), classical);
    }

    #[test]
    fn revlaw_mp_cases() {
        let zero = BlockMatrix::split(&Matrix::zeros(3, 3), 1, 1).unwrap();
        let v = check_thm_revlaw_mp(&zero);
        assert_eq!(v.outcome(), Outcome::Holds);

        let v = check_thm_revlaw_mp(&schur_example());
        assert!(!v.hypotheses_hold());
        assert!(v.conclusions.is_empty());
    }

    #[test]
    fn g_implies_f_on_example_has_both_sides_false() {
        let v = check_thm_g_implies_f(&schur_example());
        assert_eq!(v.outcome(), Outcome::Holds);
        assert_eq!(v.conclusion("F = 0"), Some(false));
        assert_eq!(v.conclusion("(I-CC†)D = 0"), Some(true));
        assert_eq!(v.conclusion("D(I-B†B) = 0"), Some(true));
        assert_eq!(v.conclusion("(BD†C)† = C†DB†"), Some(false));
    }

    #[test]
    fn f_implies_g_vacuous_when_f_nonzero() {
        let v = check_thm_f_implies_g(&schur_example());
        assert_eq!(v.outcome(), Outcome::NotApplicable);
    }

    #[test]
    fn sharp_checks_on_schur_example() {
        let m = schur_example();
        let v = check_thm_revlaw_group(&m).unwrap();
        assert_eq!(v.outcome(), Outcome::NotApplicable);

        let v = check_thm_l_implies_k(&m).unwrap();
        assert_eq!(v.hypothesis("K = 0"), Some(false));
        assert!(v.conclusion_holds);

        let v = check_thm_k_implies_l(&m).unwrap();
        assert_eq!(v.outcome(), Outcome::NotApplicable);
    }

    #[test]
    fn converse_blocker_with_exact_group_inverses() {
        let m = BlockMatrix::new(
            matrix![[1, 1], [0, 0]],
            Matrix::identity(2),
            matrix![[1, 1], [0, 1]],
            matrix![[1, 0], [0, 0]],
        )
        .unwrap();
        let v = check_thm_l_implies_k(&m).unwrap();
        assert_eq!(v.hypothesis("L = 0"), Some(true));
        assert_eq!(v.hypothesis("K = 0"), Some(false));
        assert!(v.conclusion_holds);
    }

    #[test]
    fn sharp_checks_on_zero_blocks() {
        let zero = BlockMatrix::split(&Matrix::zeros(4, 4), 2, 2).unwrap();
        assert_eq!(check_thm_revlaw_group(&zero).unwrap().outcome(), Outcome::Holds);
        assert_eq!(check_thm_l_implies_k(&zero).unwrap().outcome(), Outcome::Holds);
        assert_eq!(check_thm_k_implies_l(&zero).unwrap().outcome(), Outcome::Holds);
    }

    #[test]
    fn sharp_checks_propagate_missing_group_inverse() {
        let m = BlockMatrix::new(
            Matrix::identity(2),
            matrix![[0, 1], [0, 0]],
            Matrix::identity(2),
            Matrix::identity(2),
        )
        .unwrap();
        let err = check_thm_revlaw_group(&m).unwrap_err();
        assert!(matches!(err, Error::NoGroupInverse { block: Some(ref b), .. } if b == "B"));
    }
}
