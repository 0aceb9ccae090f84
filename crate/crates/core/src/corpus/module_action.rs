use std::collections::VecDeque;

use crate::error::{GroupError, Result};
use crate::group::{Action, FiniteGroup};
use crate::linalg::{self, commutant_dim, commutant_size_brute, decode, encode, Matrix};

/// Commutant enumeration is attempted when `p^(d^2)` is at most this.
pub const BRUTE_COMMUTANT_LIMIT: u64 = 10_000_000;

/// An `F_p H`-module given by matrices, with its basic verdicts.
#[derive(Clone, Debug)]
pub struct ModuleDescription {
    pub p: u32,
    pub d: usize,
    /// Matrix of each element of `H`, by element index.
    pub matrices: Vec<Matrix>,
    pub irreducible: bool,
    pub faithful: bool,
    /// `dim_{F_p} End_H(V)`.
    pub endo_field_dim: usize,
    /// `dim_{End_H(V)} V`; meaningful when irreducible.
    pub endo_dim: usize,
    /// Whether the commutant was also counted by enumeration.
    pub endo_brute_checked: bool,
    /// The additive group of `V`, indexed by vector encoding.
    pub space: FiniteGroup,
}

impl ModuleDescription {
    /// Fixed vectors of `h` other than zero exist?
    pub fn has_fixed_vector(&self, h: usize) -> bool {
        let m = self.matrices[h].sub(&Matrix::identity(self.p, self.d));
        m.det() == 0
    }
}

/// Extends matrices for `h.generators()` to all of `h`, validates the
/// homomorphism and returns the action on `F_p^d` for `semidirect_product`.
pub fn build_module_action(
    h: &FiniteGroup,
    p: u32,
    d: usize,
    generator_matrices: &[Matrix],
) -> Result<(Action, ModuleDescription)> {
    if !linalg::is_prime(p) || d == 0 {
        return Err(GroupError::InvalidParameters(format!(
            "need a prime field and positive dimension, got p={p} d={d}"
        )));
    }
    let gens = h.generators();
    if gens.len() != generator_matrices.len() {
        return Err(GroupError::InvalidParameters(format!(
            "{} matrices for {} generators",
            generator_matrices.len(),
            gens.len()
        )));
    }
    for m in generator_matrices {
        if m.rows != d || m.cols != d || m.p != p {
            return Err(GroupError::InvalidParameters("matrix shape or field mismatch".into()));
        }
        if m.det() == 0 {
            return Err(GroupError::NotInvertible(p));
        }
    }
    let n = h.order();
    let mut mats: Vec<Option<Matrix>> = vec![None; n];
    mats[0] = Some(Matrix::identity(p, d));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mx = mats[x].clone().unwrap();
        for (k, &s) in gens.iter().enumerate() {
            let xs = h.mul(x, s);
            let want = mx.mul(&generator_matrices[k]);
            match &mats[xs] {
                None => {
                    mats[xs] = Some(want);
                    queue.push_back(xs);
                }
                Some(m) if *m != want => {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "element {xs} gets two different matrices"
                    )));
                }
                _ => {}
            }
        }
    }
    let matrices: Vec<Matrix> = mats.into_iter().map(|m| m.unwrap()).collect();
    let space = crate::corpus::elementary_abelian(p as usize, d)?;
    let size = space.order();
    let images: Vec<Vec<usize>> = generator_matrices
        .iter()
        .map(|m| {
            (0..size)
                .map(|x| encode(&m.apply(&decode(x, p, d)), p))
                .collect()
        })
        .collect();
    let action = Action::from_generator_images(&space, h, &images)?;
    let faithful = (1..n).all(|x| matrices[x] != Matrix::identity(p, d));
    let irreducible = is_irreducible(p, d, generator_matrices);
    let e = commutant_dim(p, d, generator_matrices);
    let mut brute = false;
    if let Some(count) = commutant_size_brute(p, d, generator_matrices, BRUTE_COMMUTANT_LIMIT) {
        brute = true;
        if count != (p as u64).pow(e as u32) {
            return Err(GroupError::InvariantViolated(format!(
                "commutant has {count} elements by enumeration but dimension {e} by rank"
            )));
        }
    }
    let endo_dim = if e > 0 && d % e == 0 { d / e } else { 0 };
    Ok((
        action,
        ModuleDescription {
            p,
            d,
            matrices,
            irreducible,
            faithful,
            endo_field_dim: e,
            endo_dim,
            endo_brute_checked: brute,
            space,
        },
    ))
}

/// Irreducible iff every nonzero vector spins up to the whole space.
pub fn is_irreducible(p: u32, d: usize, gens: &[Matrix]) -> bool {
    let size = (p as usize).pow(d as u32);
    (1..size).all(|x| spin(p, d, gens, &decode(x, p, d)) == d)
}

/// Dimension of the submodule generated by `v`.
pub fn spin(p: u32, d: usize, gens: &[Matrix], v: &[u32]) -> usize {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        let mut rows: Vec<Vec<i64>> = basis
            .iter()
            .map(|b| b.iter().map(|&x| x as i64).collect())
            .collect();
        rows.push(w.iter().map(|&x| x as i64).collect());
        if Matrix::from_rows(p, &rows).rank() > basis.len() {
            basis.push(w.clone());
            if basis.len() == d {
                return d;
            }
            for g in gens {
                queue.push(g.apply(&w));
            }
        }
    }
    basis.len()
}

/// `V ⋊ H` for a module given by generator matrices.
pub fn semidirect_with_module(
    h: &FiniteGroup,
    p: u32,
    d: usize,
    generator_matrices: &[Matrix],
) -> Result<(FiniteGroup, ModuleDescription)> {
    let (act, desc) = build_module_action(h, p, d, generator_matrices)?;
    let g = FiniteGroup::semidirect_product(&desc.space, h, &act)?;
    Ok((g, desc))
}
