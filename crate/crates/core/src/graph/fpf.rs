//! Generating `V^u ⋊ H` by `h1` and a translate of `h2`, where `u` is the
//! dimension of `V` over `End_H(V)`.

use crate::corpus::{build_module_action, matrix_group, semidirect_with_module, ModuleDescription};
use crate::error::{cap_exceeded, GroupError, Result};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::subgroup::closure;

/// Largest `|V^u ⋊ H|` searched exhaustively.
pub const FPF_SEARCH_LIMIT: usize = 5000;

#[derive(Clone, Debug)]
pub struct FpfInstance {
    pub name: String,
    pub h: FiniteGroup,
    pub p: u32,
    pub d: usize,
    pub generator_matrices: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpfCheck {
    pub u: usize,
    /// `det [[A1, A2], [0, B]] != 0` for an invertible `B`, with `A_i = 1 - h_i`.
    pub by_determinant: bool,
    /// Exhaustive search over `w in V^u`, when the group is small enough.
    pub by_search: Option<bool>,
    /// Index in `V^u ⋊ H` of a generating partner `(w, h2)`.
    pub witness: Option<usize>,
}

impl FpfCheck {
    pub fn agree(&self) -> bool {
        self.by_search.map_or(true, |s| s == self.by_determinant)
    }
}

fn validated(h: &FiniteGroup, p: u32, d: usize, mats: &[Matrix]) -> Result<ModuleDescription> {
    let (_, desc) = build_module_action(h, p, d, mats)?;
    if !desc.irreducible {
        return Err(GroupError::NotIrreducible);
    }
    if !desc.faithful {
        return Err(GroupError::NotFaithful);
    }
    if !desc.endo_brute_checked {
        return Err(cap_exceeded("commutant enumeration p^(d^2)", crate::corpus::BRUTE_COMMUTANT_LIMIT as usize));
    }
    Ok(desc)
}

pub fn fpf_generation_check(
    h: &FiniteGroup,
    p: u32,
    d: usize,
    generator_matrices: &[Matrix],
    h1: usize,
    h2: usize,
) -> Result<FpfCheck> {
    let desc = validated(h, p, d, generator_matrices)?;
    if closure(h, &[h1, h2]).len() != h.order() {
        return Err(GroupError::Precondition(format!("elements {h1}, {h2} do not generate H")));
    }
    let u = desc.endo_dim;
    let one = Matrix::identity(p, d);
    let a1 = one.sub(&desc.matrices[h1]);
    let a2 = one.sub(&desc.matrices[h2]);
    // block upper triangular with B = 1; any invertible B gives the same
    // verdict since the determinant factors as det(A1) det(B)
    let mut block = Matrix::zero(p, 2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            block.set(i, j, a1.get(i, j));
            block.set(i, d + j, a2.get(i, j));
        }
        block.set(d + i, d + i, 1);
    }
    let by_determinant = block.det() != 0;

    let vu_size = (p as usize).pow((d * u) as u32);
    let (mut by_search, mut witness) = (None, None);
    if vu_size * h.order() <= FPF_SEARCH_LIMIT {
        let mats: Vec<Matrix> = generator_matrices
            .iter()
            .map(|m| Matrix::block_diag(&vec![m.clone(); u]))
            .collect();
        let (x, _) = semidirect_with_module(h, p, d * u, &mats)?;
        let hn = h.order();
        let found = (0..vu_size).find(|&w| closure(&x, &[h1, w * hn + h2]).len() == x.order());
        by_search = Some(found.is_some());
        witness = found.map(|w| w * hn + h2);
    }
    Ok(FpfCheck {
        u,
        by_determinant,
        by_search,
        witness,
    })
}

fn instance(name: &str, p: u32, rows: &[&[Vec<i64>]]) -> Result<FpfInstance> {
    let mats: Vec<Matrix> = rows.iter().map(|r| Matrix::from_rows(p, r)).collect();
    let h = matrix_group(&mats, name)?;
    Ok(FpfInstance {
        name: name.to_string(),
        d: mats[0].rows,
        h,
        p,
        generator_matrices: mats,
    })
}

/// Faithful irreducible modules with `|V^u ⋊ H|` at most 5000.
pub fn fpf_instances() -> Result<Vec<FpfInstance>> {
    let (i, j) = crate::corpus::quaternion_matrices(3);
    let q8 = FpfInstance {
        name: "Q8 on F3^2".into(),
        h: crate::corpus::generalized_quaternion(8)?,
        p: 3,
        d: 2,
        generator_matrices: vec![i, j],
    };
    Ok(vec![
        instance("C3 on F2^2", 2, &[&[vec![0, 1], vec![1, 1]]])?,
        q8,
        instance("C2 on F3", 3, &[&[vec![-1]]])?,
        instance("C3 on F7", 7, &[&[vec![2]]])?,
        instance(
            "C7 on F2^3",
            2,
            &[&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]],
        )?,
        instance(
            "S3 on F2^2",
            2,
            &[&[vec![0, 1], vec![1, 0]], &[vec![0, 1], vec![1, 1]]],
        )?,
        instance(
            "SL(2,3) on F3^2",
            3,
            &[&[vec![1, 1], vec![0, 1]], &[vec![1, 0], vec![1, 1]]],
        )?,
        instance(
            "D8 on F3^2",
            3,
            &[&[vec![0, -1], vec![1, 0]], &[vec![1, 0], vec![0, -1]]],
        )?,
        instance("C8 on F3^2", 3, &[&[vec![0, 1], vec![1, 2]]])?,
    ])
}
