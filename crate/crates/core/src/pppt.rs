//! Pseudo principal pivot transforms and the inheritance of absorption by
//! principal subblocks and by the transforms themselves.
//!
//! ```text
//! H = [[A†,  −A†B], [CA†,  F ]]      J = [[G,    BD†], [−D†C, D†]]
//! S = [[A#,  −A#B], [CA#,  K ]]      T = [[L,    BD#], [−D#C, D#]]
//! ```

use serde::Serialize;

use crate::absorption::{
    check_partitions, group_absorbing_blocks, group_law, mp_absorbing_blocks, mp_law, Family,
};
use crate::error::Result;
use crate::geninv::group_inverse_exists;
use crate::ratmat::Matrix;
use crate::schur::BlockMatrix;
use crate::subspace::{is_range_symmetric, range_included, rowspace_included};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pivot {
    A,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpptResult {
    pub transform: BlockMatrix,
    pub family: Family,
    pub pivot: Pivot,
}

fn build(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> BlockMatrix {
    BlockMatrix::new(a, b, c, d).expect("transform blocks tile by construction")
}

fn pivot_on_a(m: &BlockMatrix, a_inv: Matrix, family: Family) -> PpptResult {
    let top_right = -&(&a_inv * m.b());
    let bottom_left = m.c() * &a_inv;
    let schur = m.d() - &(&bottom_left * m.b());
    PpptResult {
        transform: build(a_inv, top_right, bottom_left, schur),
        family,
        pivot: Pivot::A,
    }
}

fn pivot_on_d(m: &BlockMatrix, d_inv: Matrix, family: Family) -> PpptResult {
    let top_right = m.b() * &d_inv;
    let bottom_left = -&(&d_inv * m.c());
    let schur = m.a() - &(&top_right * m.c());
    PpptResult {
        transform: build(schur, top_right, bottom_left, d_inv),
        family,
        pivot: Pivot::D,
    }
}

/// `H = pppt(M, A)†`.
pub fn pppt_dagger(m: &BlockMatrix) -> PpptResult {
    pivot_on_a(m, m.a().pinv(), Family::Dagger)
}

/// `J = cpppt(M, D)†`.
pub fn cpppt_dagger(m: &BlockMatrix) -> PpptResult {
    pivot_on_d(m, m.d().pinv(), Family::Dagger)
}

/// `S = pppt(M, A)#`.
pub fn pppt_sharp(m: &BlockMatrix) -> Result<PpptResult> {
    let a_s = m.a().ginv().map_err(|e| e.in_block("A"))?;
    Ok(pivot_on_a(m, a_s, Family::Sharp))
}

/// `T = cpppt(M, D)#`.
pub fn cpppt_sharp(m: &BlockMatrix) -> Result<PpptResult> {
    let d_s = m.d().ginv().map_err(|e| e.in_block("D"))?;
    Ok(pivot_on_d(m, d_s, Family::Sharp))
}

/// Dispatches on family and pivot.
pub fn transform(m: &BlockMatrix, family: Family, pivot: Pivot) -> Result<PpptResult> {
    match (family, pivot) {
        (Family::Dagger, Pivot::A) => Ok(pppt_dagger(m)),
        (Family::Dagger, Pivot::D) => Ok(cpppt_dagger(m)),
        (Family::Sharp, Pivot::A) => pppt_sharp(m),
        (Family::Sharp, Pivot::D) => cpppt_sharp(m),
    }
}

/// The four range conditions tying the off-diagonal blocks to both pivots,
/// labelled with `tag` (`"U"` or `"V"`).
pub fn block_range_conditions(m: &BlockMatrix, tag: &str) -> Result<Vec<(String, bool)>> {
    Ok(vec![
        (format!("R(C_{tag}*) ⊆ R(A_{tag}*)"), rowspace_included(m.c(), m.a())?),
        (format!("R(B_{tag}) ⊆ R(A_{tag})"), range_included(m.b(), m.a())?),
        (format!("R(B_{tag}*) ⊆ R(D_{tag}*)"), rowspace_included(m.b(), m.d())?),
        (format!("R(C_{tag}) ⊆ R(D_{tag})"), range_included(m.c(), m.d())?),
    ])
}

fn with_conditions(mut v: Verdict, conds: Vec<(String, bool)>) -> Verdict {
    for (name, holds) in conds {
        v = v.hyp(name, holds);
    }
    v
}

/// Principal subblocks `(A_U, A_V)` or `(D_U, D_V)` of a Moore-Penrose
/// absorbing pair.
pub fn check_thm_prinsub_mp(u: &BlockMatrix, v: &BlockMatrix, which: Pivot) -> Result<Verdict> {
    check_partitions(u, v)?;
    let verdict = match which {
        Pivot::A => Verdict::new()
            .hyp("R(B_V) ⊆ R(A_V)", range_included(v.b(), v.a())?)
            .hyp("R(C_U*) ⊆ R(A_U*)", rowspace_included(u.c(), u.a())?),
        Pivot::D => Verdict::new()
            .hyp("R(C_V) ⊆ R(D_V)", range_included(v.c(), v.d())?)
            .hyp("R(B_U*) ⊆ R(D_U*)", rowspace_included(u.b(), u.d())?),
    };
    let verdict = verdict.hyp("(U,V) MP-absorbing", mp_absorbing_blocks(u, v));
    Ok(match which {
        Pivot::A => verdict.concl("(A_U,A_V) MP-absorbing", mp_law(u.a(), v.a())),
        Pivot::D => verdict.concl("(D_U,D_V) MP-absorbing", mp_law(u.d(), v.d())),
    })
}

fn has_group_inverse(m: &Matrix) -> bool {
    group_inverse_exists(m).unwrap_or(false)
}

/// Principal subblocks of a group absorbing pair. Group invertibility of the
/// two subblocks is taken as a hypothesis.
pub fn check_thm_prinsub_group(u: &BlockMatrix, v: &BlockMatrix, which: Pivot) -> Result<Verdict> {
    check_partitions(u, v)?;
    let uv = group_absorbing_blocks(u, v);
    let verdict = match which {
        Pivot::A => Verdict::new()
            .hyp("R(B_U) ⊆ R(A_U)", range_included(u.b(), u.a())?)
            .hyp("R(C_V*) ⊆ R(A_V*)", rowspace_included(v.c(), v.a())?)
            .hyp("A_U#, A_V# exist", has_group_inverse(u.a()) && has_group_inverse(v.a())),
        Pivot::D => Verdict::new()
            .hyp("R(C_U) ⊆ R(D_U)", range_included(u.c(), u.d())?)
            .hyp("R(B_V*) ⊆ R(D_V*)", rowspace_included(v.b(), v.d())?)
            .hyp("D_U#, D_V# exist", has_group_inverse(u.d()) && has_group_inverse(v.d())),
    };
    let verdict = verdict
        .hyp("U, V group invertible", uv.is_some())
        .hyp("(U,V) group-absorbing", uv == Some(true));
    if !verdict.hypotheses_hold() {
        return Ok(verdict);
    }
    Ok(match which {
        Pivot::A => verdict.concl(
            "(A_U,A_V) group-absorbing",
            group_law(u.a(), v.a()) == Some(true),
        ),
        Pivot::D => verdict.concl(
            "(D_U,D_V) group-absorbing",
            group_law(u.d(), v.d()) == Some(true),
        ),
    })
}

fn range_symmetric(m: &Matrix) -> bool {
    is_range_symmetric(m).unwrap_or(false)
}

/// Inheritance of Moore-Penrose absorption by `(H_U, H_V)` (pivot `A`) or
/// `(J_U, J_V)` (pivot `D`).
///
/// Besides the absorption conclusion, the verdict records that the
/// transform's Moore-Penrose inverse is the complementary transform:
/// `H† = J` under the eight range conditions.
pub fn check_thm_inherit_pppt_mp(u: &BlockMatrix, v: &BlockMatrix, pivot: Pivot) -> Result<Verdict> {
    check_partitions(u, v)?;
    let mut verdict = with_conditions(Verdict::new(), block_range_conditions(u, "U")?);
    verdict = with_conditions(verdict, block_range_conditions(v, "V")?);
    verdict = match pivot {
        Pivot::A => verdict
            .hyp("A_U range symmetric", range_symmetric(u.a()))
            .hyp("A_V range symmetric", range_symmetric(v.a())),
        Pivot::D => verdict
            .hyp("D_U range symmetric", range_symmetric(u.d()))
            .hyp("D_V range symmetric", range_symmetric(v.d())),
    };
    verdict = verdict.hyp("(U,V) MP-absorbing", mp_absorbing_blocks(u, v));
    if !verdict.hypotheses_hold() {
        return Ok(verdict);
    }

    let (hu, hv) = (pppt_dagger(u).transform, pppt_dagger(v).transform);
    let (ju, jv) = (cpppt_dagger(u).transform, cpppt_dagger(v).transform);
    let (name, xu, xv, yu, yv) = match pivot {
        Pivot::A => ("H", &hu, &hv, &ju, &jv),
        Pivot::D => ("J", &ju, &jv, &hu, &hv),
    };
    let other = if name == "H" { "J" } else { "H" };
    let (xu, xv) = (xu.assemble(), xv.assemble());
    Ok(verdict
        .witness(format!("{name}_U"), &xu)
        .witness(format!("{name}_V"), &xv)
        .concl(
            format!("{name}_U† = {other}_U"),
            xu.pinv() == yu.assemble(),
        )
        .concl(
            format!("{name}_V† = {other}_V"),
            xv.pinv() == yv.assemble(),
        )
        .concl(format!("({name}_U,{name}_V) MP-absorbing"), mp_law(&xu, &xv)))
}

/// How to read the first range hypothesis of the sharp transform theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `R(C_V*) ⊆ R(A_V*)`, matching the other seven conditions.
    Corrected,
    /// `R(C_V*) ⊆ R(A_U*)`, with mixed subscripts as printed.
    Literal,
}

/// Inheritance of group absorption by `(S_U, S_V)` (pivot `A`) or
/// `(T_U, T_V)` (pivot `D`).
///
/// The verdict also records that each transform is group invertible with
/// `S# = T` (resp. `T# = S`).
pub fn check_thm_inherit_pppt_group(
    u: &BlockMatrix,
    v: &BlockMatrix,
    pivot: Pivot,
    reading: Reading,
) -> Result<Verdict> {
    check_partitions(u, v)?;
    let mut verdict = Verdict::new()
        .hyp("A_U# exists", has_group_inverse(u.a()))
        .hyp("A_V# exists", has_group_inverse(v.a()))
        .hyp("D_U# exists", has_group_inverse(u.d()))
        .hyp("D_V# exists", has_group_inverse(v.d()));
    if !verdict.hypotheses_hold() {
        return Ok(verdict);
    }
    let mut v_conds = block_range_conditions(v, "V")?;
    if reading == Reading::Literal {
        v_conds[0] = (
            "R(C_V*) ⊆ R(A_U*)".to_string(),
            rowspace_included(v.c(), u.a())?,
        );
    }
    verdict = with_conditions(verdict, v_conds);
    verdict = with_conditions(verdict, block_range_conditions(u, "U")?);
    let uv = group_absorbing_blocks(u, v);
    verdict = verdict
        .hyp("U, V group invertible", uv.is_some())
        .hyp("(U,V) group-absorbing", uv == Some(true));
    if !verdict.hypotheses_hold() {
        return Ok(verdict);
    }

    let (su, sv) = (pppt_sharp(u)?.transform, pppt_sharp(v)?.transform);
    let (tu, tv) = (cpppt_sharp(u)?.transform, cpppt_sharp(v)?.transform);
    let (name, other, xu, xv, yu, yv) = match pivot {
        Pivot::A => ("S", "T", &su, &sv, &tu, &tv),
        Pivot::D => ("T", "S", &tu, &tv, &su, &sv),
    };
    let (xu, xv) = (xu.assemble(), xv.assemble());
    let (xu_s, xv_s) = (xu.ginv().ok(), xv.ginv().ok());
    let law = match (&xu_s, &xv_s) {
        (Some(a), Some(b)) => a + b == &(a * &(&xu + &xv)) * b,
        _ => false,
    };
    Ok(verdict
        .witness(format!("{name}_U"), &xu)
        .witness(format!("{name}_V"), &xv)
        .concl(format!("{name}_U group invertible"), xu_s.is_some())
        .concl(format!("{name}_V group invertible"), xv_s.is_some())
        .concl(
            format!("{name}_U# = {other}_U"),
            xu_s.as_ref() == Some(&yu.assemble()),
        )
        .concl(
            format!("{name}_V# = {other}_V"),
            xv_s.as_ref() == Some(&yv.assemble()),
        )
        .concl(format!("({name}_U,{name}_V) group-absorbing"), law))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;
    use crate::verdict::Outcome;

    fn example_u() -> BlockMatrix {
        BlockMatrix::split(&matrix![["1/2", "1/2", 0], [-2, 1, 0], [0, 0, 0]], 2, 2).unwrap()
    }

    fn example_v() -> BlockMatrix {
        BlockMatrix::split(&matrix![[2, 1, 0], [2, 2, 0], [0, 0, 0]], 2, 2).unwrap()
    }

    fn vanishing_example() -> BlockMatrix {
        BlockMatrix::new(
            matrix![[-2, 1], [-2, 1]],
            matrix![[1, 1], [1, 1]],
            matrix![[2, -1], [-1, 2]],
            matrix![[-1, -1], [0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn dagger_transform_of_worked_pair() {
        let hv = pppt_dagger(&example_v()).transform.assemble();
        assert_eq!(hv, matrix![[1, "-1/2", 0], [-1, 1, 0], [0, 0, 0]]);
        let hu = pppt_dagger(&example_u()).transform;
        assert_eq!(hu.a(), &example_u().a().pinv());
        assert!(hu.b().is_zero() && hu.c().is_zero() && hu.d().is_zero());
    }

    #[test]
    fn identity_is_fixed() {
        let m = BlockMatrix::split(&Matrix::identity(4), 2, 2).unwrap();
        for family in [Family::Dagger, Family::Sharp] {
            for pivot in [Pivot::A, Pivot::D] {
                assert_eq!(transform(&m, family, pivot).unwrap().transform, m);
            }
        }
    }

    #[test]
    fn sharp_transforms_of_vanishing_example() {
        let m = vanishing_example();
        let s = pppt_sharp(&m).unwrap().transform;
        assert_eq!(s.d(), &matrix![[0, 0], [1, 1]]);
        let t = cpppt_sharp(&m).unwrap().transform;
        assert_eq!(t.a(), &matrix![[-1, 2], [-1, 2]]);
    }

    #[test]
    fn sharp_block_diagonal() {
        let a = matrix![[1, 1], [0, 0]];
        let d = matrix![[2, 1], [0, 3]];
        let m = BlockMatrix::new(a.clone(), Matrix::zeros(2, 2), Matrix::zeros(2, 2), d.clone()).unwrap();
        let s = pppt_sharp(&m).unwrap().transform;
        assert_eq!(s.a(), &a.ginv().unwrap());
        assert_eq!(s.d(), &d);
        assert!(s.b().is_zero() && s.c().is_zero());
    }

    #[test]
    fn sharp_transform_needs_group_inverse() {
        let m = BlockMatrix::split(&matrix![[0, 1, 0], [0, 0, 0], [0, 0, 1]], 2, 2).unwrap();
        assert!(pppt_sharp(&m).is_err());
        assert!(cpppt_sharp(&m).is_ok());
    }

    #[test]
    fn classical_ppt_for_invertible_pivot() {
        let m = BlockMatrix::split(&matrix![[2, 1, 1], [1, 1, 0], [3, 0, 5]], 2, 2).unwrap();
        let a_inv = m.a().inverse().unwrap();
        let classical = build(
            a_inv.clone(),
            -&(&a_inv * m.b()),
            m.c() * &a_inv,
            m.d() - &(&(m.c() * &a_inv) * m.b()),
        );
        assert_eq!(pppt_dagger(&m).transform, classical);
        assert_eq!(pppt_sharp(&m).unwrap().transform, classical);
    }

    #[test]
    fn worked_pair_inherits() {
        let (u, v) = (example_u(), example_v());
        let verdict = check_thm_prinsub_mp(&u, &v, Pivot::A).unwrap();
        assert_eq!(verdict.outcome(), Outcome::Holds);
        let verdict = check_thm_prinsub_mp(&u, &v, Pivot::D).unwrap();
        assert_eq!(verdict.outcome(), Outcome::Holds);
        let verdict = check_thm_inherit_pppt_mp(&u, &v, Pivot::A).unwrap();
        assert_eq!(verdict.outcome(), Outcome::Holds);
        assert_eq!(verdict.conclusion("(H_U,H_V) MP-absorbing"), Some(true));
    }

    #[test]
    fn equal_pair_inherits_group() {
        let u = BlockMatrix::split(&matrix![[1, 2, 0], [2, 1, 0], [0, 0, 3]], 2, 2).unwrap();
        for pivot in [Pivot::A, Pivot::D] {
            assert_eq!(check_thm_prinsub_group(&u, &u, pivot).unwrap().outcome(), Outcome::Holds);
            for reading in [Reading::Corrected, Reading::Literal] {
                let v = check_thm_inherit_pppt_group(&u, &u, pivot, reading).unwrap();
                assert_eq!(v.outcome(), Outcome::Holds, "{pivot:?} {reading:?}");
            }
        }
    }

    #[test]
    fn group_inheritance_vacuous_without_pivot_inverse() {
        let u = BlockMatrix::split(&matrix![[0, 1, 0], [0, 0, 0], [0, 0, 1]], 2, 2).unwrap();
        let v = check_thm_inherit_pppt_group(&u, &u, Pivot::A, Reading::Corrected).unwrap();
        assert_eq!(v.outcome(), Outcome::NotApplicable);
        assert_eq!(v.failing_hypotheses(), vec!["A_U# exists", "A_V# exists"]);
    }
}
