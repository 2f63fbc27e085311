//! Absorption laws for generalized inverses.
//!
//! A pair `(A, B)` is *Moore-Penrose absorbing* when
//! `A† + B† = A†(A + B)B†`, and *group absorbing* when the same identity
//! holds with group inverses. Both laws have range characterizations:
//!
//! * dagger: `R(Bᵀ) ⊆ R(Aᵀ)` and `R(A) ⊆ R(B)`;
//! * sharp: `R(Aᵀ) ⊆ R(Bᵀ)` and `R(B) ⊆ R(A)`.
//!
//! [`mp_absorbing`] and [`group_absorbing`] evaluate the law and its
//! characterization independently, so the equivalence itself stays under
//! test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv::group_inverse_exists;
use crate::ratmat::Matrix;
use crate::schur::{schur_f, schur_g, BlockMatrix};
use crate::subspace::{range_included, rowspace_included};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dagger,
    Sharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionVerdict {
    /// The algebraic identity.
    pub law_holds: bool,
    /// The range characterization.
    pub range_conditions_hold: bool,
    pub family: Family,
}

impl AbsorptionVerdict {
    /// Both sides agree, as the characterization theorems require.
    pub fn consistent(&self) -> bool {
        self.law_holds == self.range_conditions_hold
    }
}

fn same_shape(op: &'static str, a: &Matrix, b: &Matrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::dim(op, a.shape(), b.shape()));
    }
    Ok(())
}

/// `A† + B† = A†(A + B)B†`, evaluated exactly. Shapes must agree.
pub fn mp_law(a: &Matrix, b: &Matrix) -> bool {
    let (ap, bp) = (a.pinv(), b.pinv());
    &ap + &bp == &(&ap * &(a + b)) * &bp
}

fn group_law_with(a: &Matrix, b: &Matrix, a_s: &Matrix, b_s: &Matrix) -> bool {
    a_s + b_s == &(a_s * &(a + b)) * b_s
}

/// `A# + B# = A#(A + B)B#`; `None` when either group inverse is missing.
pub fn group_law(a: &Matrix, b: &Matrix) -> Option<bool> {
    let a_s = a.ginv().ok()?;
    let b_s = b.ginv().ok()?;
    Some(group_law_with(a, b, &a_s, &b_s))
}

pub fn mp_absorbing(a: &Matrix, b: &Matrix) -> Result<AbsorptionVerdict> {
    same_shape("mp_absorbing", a, b)?;
    let law_holds = mp_law(a, b);
    let rows = rowspace_included(b, a)?;
    let cols = range_included(a, b)?;
    Ok(AbsorptionVerdict {
        law_holds,
        range_conditions_hold: rows && cols,
        family: Family::Dagger,
    })
}

pub fn group_absorbing(a: &Matrix, b: &Matrix) -> Result<AbsorptionVerdict> {
    same_shape("group_absorbing", a, b)?;
    let a_s = a.ginv().map_err(|e| e.in_block("A"))?;
    let b_s = b.ginv().map_err(|e| e.in_block("B"))?;
    let law_holds = group_law_with(a, b, &a_s, &b_s);
    let rows = rowspace_included(a, b)?;
    let cols = range_included(b, a)?;
    Ok(AbsorptionVerdict {
        law_holds,
        range_conditions_hold: rows && cols,
        family: Family::Sharp,
    })
}

/// Absorption on block matrices is decided on the assembled matrices.
pub fn mp_absorbing_blocks(u: &BlockMatrix, v: &BlockMatrix) -> bool {
    let (u, v) = (u.assemble(), v.assemble());
    u.shape() == v.shape() && mp_law(&u, &v)
}

/// `None` when either assembled matrix lacks a group inverse.
pub fn group_absorbing_blocks(u: &BlockMatrix, v: &BlockMatrix) -> Option<bool> {
    let (u, v) = (u.assemble(), v.assemble());
    if u.shape() != v.shape() {
        return Some(false);
    }
    group_law(&u, &v)
}

/// Pass/fail counts for one relation property.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub failures: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Properties of an absorbing-pair relation over a sample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub sample_size: usize,
    /// Ordered pairs (including the diagonal) found related.
    pub related_pairs: u64,
    pub reflexive: Tally,
    /// Counted over triples whose two premises hold.
    pub transitive: Tally,
    /// `A ~ B` iff `Bᵀ ~ Aᵀ`, over all ordered pairs.
    pub duality: Tally,
    /// dagger: `A ~ B` iff `B† ~ A†`; sharp: `A ~ B` iff `A# ~ B#`.
    pub inverse_duality: Tally,
    /// Checked on the orthogonal projectors (dagger) or idempotents (sharp)
    /// found in the sample.
    pub antisymmetric: Tally,
    pub antisymmetry_subsample: usize,
}

impl RelationReport {
    pub fn failures(&self) -> u64 {
        self.reflexive.failures
            + self.transitive.failures
            + self.duality.failures
            + self.inverse_duality.failures
            + self.antisymmetric.failures
    }
}

fn check_homogeneous(sample: &[Matrix]) -> Result<()> {
    if let Some(first) = sample.first() {
        for m in sample {
            same_shape("relation sample", first, m)?;
        }
    }
    Ok(())
}

fn relation_report(
    sample: &[Matrix],
    related: impl Fn(&Matrix, &Matrix) -> bool,
    dual_inverse: impl Fn(&Matrix, &Matrix, &Matrix, &Matrix) -> bool,
    inverse: impl Fn(&Matrix) -> Matrix,
    in_subsample: impl Fn(&Matrix) -> bool,
) -> RelationReport {
    let n = sample.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = related(&sample[i], &sample[j]);
        }
    }
    let transposed: Vec<Matrix> = sample.iter().map(Matrix::transpose).collect();
    let inverses: Vec<Matrix> = sample.iter().map(&inverse).collect();

    let mut report = RelationReport {
        sample_size: n,
        ..RelationReport::default()
    };
    for i in 0..n {
        report.reflexive.record(rel[i][i]);
        for j in 0..n {
            report.related_pairs += u64::from(rel[i][j]);
            report
                .duality
                .record(rel[i][j] == related(&transposed[j], &transposed[i]));
            report
                .inverse_duality
                .record(rel[i][j] == dual_inverse(&inverses[i], &inverses[j], &sample[i], &sample[j]));
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] {
                    report.transitive.record(rel[i][k]);
                }
            }
        }
    }

    let sub: Vec<usize> = (0..n).filter(|&i| in_subsample(&sample[i])).collect();
    report.antisymmetry_subsample = sub.len();
    for &i in &sub {
        for &j in &sub {
            if rel[i][j] && rel[j][i] {
                report.antisymmetric.record(sample[i] == sample[j]);
            }
        }
    }
    report
}

pub fn is_orthogonal_projector(p: &Matrix) -> bool {
    p.is_square() && p.transpose() == *p && &(p * p) == p
}

pub fn is_idempotent(p: &Matrix) -> bool {
    p.is_square() && &(p * p) == p
}

/// Reflexivity, transitivity, both dualities and (on orthogonal
/// projectors) antisymmetry of the Moore-Penrose absorbing relation.
pub fn relation_m_properties(sample: &[Matrix]) -> Result<RelationReport> {
    check_homogeneous(sample)?;
    Ok(relation_report(
        sample,
        mp_law,
        // (B†, A†)
        |ai, bi, _, _| mp_law(bi, ai),
        Matrix::pinv,
        is_orthogonal_projector,
    ))
}

/// The same properties for the group absorbing relation; antisymmetry is
/// checked on idempotents. Every sample element must be group invertible.
pub fn relation_g_properties(sample: &[Matrix]) -> Result<RelationReport> {
    check_homogeneous(sample)?;
    for m in sample {
        m.ginv()?;
    }
    let related = |a: &Matrix, b: &Matrix| group_law(a, b).expect("sample is group invertible");
    Ok(relation_report(
        sample,
        related,
        // (A#, B#) — same order, unlike the dagger case.
        |ai, bi, _, _| group_law(ai, bi).expect("group inverses are group invertible"),
        |m| m.ginv().expect("checked above"),
        is_idempotent,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SchurSide {
    /// `F = D − CA†B` (dagger) or `K = D − CA#B` (sharp).
    Pivot,
    /// `G = A − BD†C` (dagger) or `L = A − BD#C` (sharp).
    Complement,
}

pub(crate) fn check_partitions(u: &BlockMatrix, v: &BlockMatrix) -> Result<()> {
    if u.partition() != v.partition() {
        let (a, b) = (u.partition(), v.partition());
        return Err(Error::Partition(format!(
            "partitions differ: {}+{} x {}+{} vs {}+{} x {}+{}",
            a.0, a.1, a.2, a.3, b.0, b.1, b.2, b.3
        )));
    }
    Ok(())
}

/// Inheritance of the Moore-Penrose absorption law by `(F_U, F_V)`
/// ([`SchurSide::Pivot`]) or `(G_U, G_V)` ([`SchurSide::Complement`]).
pub fn check_thm_schur_inherit_mp(
    u: &BlockMatrix,
    v: &BlockMatrix,
    which: SchurSide,
) -> Result<Verdict> {
    check_partitions(u, v)?;
    let verdict = match which {
        SchurSide::Pivot => {
            let (fu, fv) = (schur_f(u), schur_f(v));
            let (aup, avp) = (u.a().pinv(), v.a().pinv());
            Verdict::new()
                .hyp("R(B_U) ⊆ R(A_U)", range_included(u.b(), u.a())?)
                .hyp(
                    "R((A_U†B_U)*) ⊆ R(F_U*)",
                    rowspace_included(&(&aup * u.b()), &fu)?,
                )
                .hyp("R(C_V*) ⊆ R(A_V*)", rowspace_included(v.c(), v.a())?)
                .hyp(
                    "R(C_V A_V†) ⊆ R(F_V)",
                    range_included(&(v.c() * &avp), &fv)?,
                )
                .hyp("(U,V) MP-absorbing", mp_absorbing_blocks(u, v))
                .witness("F_U", &fu)
                .witness("F_V", &fv)
                .concl("(F_U,F_V) MP-absorbing", mp_law(&fu, &fv))
        }
        SchurSide::Complement => {
            let (gu, gv) = (schur_g(u), schur_g(v));
            let (dup, dvp) = (u.d().pinv(), v.d().pinv());
            Verdict::new()
                .hyp("R(C_U) ⊆ R(D_U)", range_included(u.c(), u.d())?)
                .hyp(
                    "R((D_U†C_U)*) ⊆ R(G_U*)",
                    rowspace_included(&(&dup * u.c()), &gu)?,
                )
                .hyp("R(B_V*) ⊆ R(D_V*)", rowspace_included(v.b(), v.d())?)
                .hyp(
                    "R(B_V D_V†) ⊆ R(G_V)",
                    range_included(&(v.b() * &dvp), &gv)?,
                )
                .hyp("(U,V) MP-absorbing", mp_absorbing_blocks(u, v))
                .witness("G_U", &gu)
                .witness("G_V", &gv)
                .concl("(G_U,G_V) MP-absorbing", mp_law(&gu, &gv))
        }
    };
    Ok(verdict)
}

fn group_pair_conclusion(v: Verdict, name: &str, x: &Matrix, y: &Matrix) -> Verdict {
    let exists = group_inverse_exists(x).unwrap_or(false) && group_inverse_exists(y).unwrap_or(false);
    let v = v.concl(format!("{name} group invertible"), exists);
    let law = exists && group_law(x, y).unwrap_or(false);
    v.concl(format!("{name} group-absorbing"), law)
}

/// Inheritance of the group absorption law by `(K_U, K_V)`
/// ([`SchurSide::Pivot`]) or `(L_U, L_V)` ([`SchurSide::Complement`]).
///
/// The pivot blocks (`A_U`, `A_V` or `D_U`, `D_V`) must be group invertible;
/// otherwise the complements are undefined and an error is returned. Group
/// invertibility of `U` and `V` is part of the absorbing-pair hypothesis.
pub fn check_thm_schur_inherit_group(
    u: &BlockMatrix,
    v: &BlockMatrix,
    which: SchurSide,
) -> Result<Verdict> {
    check_partitions(u, v)?;
    let uv = group_absorbing_blocks(u, v);
    let verdict = match which {
        SchurSide::Pivot => {
            let aus = u.a().ginv().map_err(|e| e.in_block("A_U"))?;
            let avs = v.a().ginv().map_err(|e| e.in_block("A_V"))?;
            let ku = u.d() - &(&(u.c() * &aus) * u.b());
            let kv = v.d() - &(&(v.c() * &avs) * v.b());
            let verdict = Verdict::new()
                .hyp("R(B_V) ⊆ R(A_V)", range_included(v.b(), v.a())?)
                .hyp(
                    "R((A_V#B_V)*) ⊆ R(K_V*)",
                    rowspace_included(&(&avs * v.b()), &kv)?,
                )
                .hyp("R(C_U*) ⊆ R(A_U*)", rowspace_included(u.c(), u.a())?)
                .hyp(
                    "R(C_U A_U#) ⊆ R(K_U)",
                    range_included(&(u.c() * &aus), &ku)?,
                )
                .hyp("U, V group invertible", uv.is_some())
                .hyp("(U,V) group-absorbing", uv == Some(true))
                .witness("K_U", &ku)
                .witness("K_V", &kv);
            group_pair_conclusion(verdict, "(K_U,K_V)", &ku, &kv)
        }
        SchurSide::Complement => {
            let dus = u.d().ginv().map_err(|e| e.in_block("D_U"))?;
            let dvs = v.d().ginv().map_err(|e| e.in_block("D_V"))?;
            let lu = u.a() - &(&(u.b() * &dus) * u.c());
            let lv = v.a() - &(&(v.b() * &dvs) * v.c());
            let verdict = Verdict::new()
                .hyp("R(C_V) ⊆ R(D_V)", range_included(v.c(), v.d())?)
                .hyp(
                    "R((D_V#C_V)*) ⊆ R(L_V*)",
                    rowspace_included(&(&dvs * v.c()), &lv)?,
                )
                .hyp("R(B_U*) ⊆ R(D_U*)", rowspace_included(u.b(), u.d())?)
                .hyp(
                    "R(B_U D_U#) ⊆ R(L_U)",
                    range_included(&(u.b() * &dus), &lu)?,
                )
                .hyp("U, V group invertible", uv.is_some())
                .hyp("(U,V) group-absorbing", uv == Some(true))
                .witness("L_U", &lu)
                .witness("L_V", &lv);
            group_pair_conclusion(verdict, "(L_U,L_V)", &lu, &lv)
        }
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;
    use crate::verdict::Outcome;

    fn example_pair() -> (Matrix, Matrix) {
        (
            matrix![["1/2", "1/2", 0], [-2, 1, 0], [0, 0, 0]],
            matrix![[2, 1, 0], [2, 2, 0], [0, 0, 0]],
        )
    }

    #[test]
    fn reflexive_pair_absorbs() {
        let (a, _) = example_pair();
        let v = mp_absorbing(&a, &a).unwrap();
        assert!(v.law_holds && v.range_conditions_hold);
        let g = group_absorbing(&a, &a).unwrap();
        assert!(g.law_holds && g.range_conditions_hold);
    }

    #[test]
    fn worked_pair_absorbs_both_ways() {
        let (a, b) = example_pair();
        let v = mp_absorbing(&a, &b).unwrap();
        assert!(v.law_holds);
        assert!(v.range_conditions_hold);
    }

    #[test]
    fn zero_partner_does_not_absorb() {
        let (a, _) = example_pair();
        let z = Matrix::zeros(3, 3);
        for v in [mp_absorbing(&a, &z).unwrap(), mp_absorbing(&z, &a).unwrap()] {
            assert!(!v.law_holds);
            assert!(!v.range_conditions_hold);
        }
    }

    #[test]
    fn identity_and_idempotent_are_not_group_absorbing() {
        let v = group_absorbing(&Matrix::identity(2), &matrix![[1, 1], [0, 0]]).unwrap();
        assert!(!v.law_holds);
        assert!(!v.range_conditions_hold);
    }

    #[test]
    fn comparable_idempotents_are_not_related() {
        // P ≤ Q in the usual idempotent order does not make them absorbing:
        // the relation forces equal ranges and row spaces.
        let p = matrix![[1, 0], [0, 0]];
        let q = Matrix::identity(2);
        for (x, y) in [(&p, &q), (&q, &p)] {
            let v = group_absorbing(x, y).unwrap();
            assert!(v.consistent());
            assert!(!v.law_holds);
        }
    }

    #[test]
    fn group_absorbing_requires_group_inverses() {
        let n = matrix![[0, 1], [0, 0]];
        let err = group_absorbing(&Matrix::identity(2), &n).unwrap_err();
        assert!(matches!(err, Error::NoGroupInverse { block: Some(ref b), .. } if b == "B"));
        assert!(mp_absorbing(&n, &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn singleton_relation_report() {
        let (a, b) = example_pair();
        let r = relation_m_properties(std::slice::from_ref(&a)).unwrap();
        assert_eq!(r.reflexive, Tally { checked: 1, failures: 0 });
        assert_eq!(r.failures(), 0);
        let r = relation_m_properties(&[a, b]).unwrap();
        assert_eq!(r.related_pairs, 4);
        assert_eq!(r.failures(), 0);
    }

    #[test]
    fn projector_antisymmetry() {
        let sample = vec![
            matrix![[1, 0], [0, 0]],
            matrix![[0, 0], [0, 1]],
            matrix![["1/2", "1/2"], ["1/2", "1/2"]],
            Matrix::identity(2),
            Matrix::zeros(2, 2),
        ];
        let r = relation_m_properties(&sample).unwrap();
        assert_eq!(r.antisymmetry_subsample, 5);
        assert_eq!(r.antisymmetric.checked, 5);
        assert_eq!(r.failures(), 0);
        let r = relation_g_properties(&sample).unwrap();
        assert_eq!(r.failures(), 0);
    }

    #[test]
    fn relation_g_rejects_nilpotent_sample() {
        assert!(relation_g_properties(&[matrix![[0, 1], [0, 0]]]).is_err());
    }

    fn diag_block(a: Matrix, d: Matrix) -> BlockMatrix {
        let b = Matrix::zeros(a.rows(), d.cols());
        let c = Matrix::zeros(d.rows(), a.cols());
        BlockMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn schur_inherit_on_equal_pair() {
        let u = diag_block(matrix![[1, 2], [2, 1]], matrix![[1, 1], [0, 0]]);
        for side in [SchurSide::Pivot, SchurSide::Complement] {
            let v = check_thm_schur_inherit_mp(&u, &u, side).unwrap();
            assert_eq!(v.outcome(), Outcome::Holds, "{side:?}");
            let v = check_thm_schur_inherit_group(&u, &u, side).unwrap();
            assert_eq!(v.outcome(), Outcome::Holds, "{side:?}");
        }
    }

    #[test]
    fn schur_inherit_vacuous_without_absorption() {
        let u = diag_block(Matrix::identity(2), Matrix::identity(1));
        let v = diag_block(Matrix::identity(2), Matrix::zeros(1, 1));
        let verdict = check_thm_schur_inherit_mp(&u, &v, SchurSide::Pivot).unwrap();
        assert_eq!(verdict.outcome(), Outcome::NotApplicable);
        assert_eq!(verdict.failing_hypotheses(), vec!["(U,V) MP-absorbing"]);
    }

    #[test]
    fn schur_inherit_partition_mismatch() {
        let u = BlockMatrix::split(&Matrix::identity(3), 1, 1).unwrap();
        let v = BlockMatrix::split(&Matrix::identity(3), 2, 2).unwrap();
        assert!(matches!(
            check_thm_schur_inherit_mp(&u, &v, SchurSide::Pivot),
            Err(Error::Partition(_))
        ));
    }

    #[test]
    fn schur_inherit_group_needs_pivot_inverse() {
        let u = diag_block(matrix![[0, 1], [0, 0]], Matrix::identity(2));
        assert!(check_thm_schur_inherit_group(&u, &u, SchurSide::Pivot).is_err());
        assert!(check_thm_schur_inherit_group(&u, &u, SchurSide::Complement).is_ok());
    }
}
