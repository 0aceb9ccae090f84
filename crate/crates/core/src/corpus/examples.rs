//! The two worked constructions: the inner group `X = (V1 x V2 x V3) ⋊ Q`
//! of the first example, and the order-75264 group `G = W ⋊ X` of the
//! second, with their named subgroups recorded in the provenance.

use std::collections::VecDeque;

use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::{automorphism_from_images, Action, FiniteGroup, Provenance};
use crate::linalg::{self, Matrix};
use crate::subgroup::{closure, conjugate_set};

use super::families::{elementary_abelian, generalized_quaternion, quaternion_matrices};
use super::module_action::semidirect_with_module;

fn named(g: &FiniteGroup, gens: &[usize]) -> ElementSet {
    closure(g, gens)
}

/// `X = (V1 x V2 x V3) ⋊ Q_8` with each `V_i` the faithful irreducible
/// 2-dimensional `Q_8`-module over `F_p`. Element `(v, q)` sits at
/// `v * 8 + q` with `v` the encoded vector of `F_p^6` (coordinates `2i, 2i+1`
/// belong to `V_{i+1}`).
pub fn example1_inner(p: usize) -> Result<FiniteGroup> {
    if p % 2 == 0 || !linalg::is_prime(p as u32) {
        return Err(GroupError::InvalidParameters(format!(
            "example1_inner needs an odd prime, got {p}"
        )));
    }
    let q8 = generalized_quaternion(8)?;
    let (i, j) = quaternion_matrices(p as u32);
    let mats = [
        Matrix::block_diag(&[i.clone(), i.clone(), i]),
        Matrix::block_diag(&[j.clone(), j.clone(), j]),
    ];
    let (x, _) = semidirect_with_module(&q8, p as u32, 6, &mats)?;
    let pp = p.pow(2);
    let vec_elem = |block: usize, k: usize| -> usize { pp.pow(block as u32) * k * 8 };
    let mut prov = Provenance::new(format!("example1_inner({p})"));
    let mut blocks = Vec::new();
    for b in 0..3 {
        let gens = [vec_elem(b, 1), vec_elem(b, p)];
        let v = named(&x, &gens);
        prov.subgroups.insert(format!("V{}", b + 1), v.clone());
        blocks.push(v);
    }
    let t = named(&x, &[vec_elem(0, 1), vec_elem(0, p), vec_elem(1, 1), vec_elem(1, p), vec_elem(2, 1), vec_elem(2, p)]);
    prov.subgroups.insert("T".into(), t);
    let zstar = named(&x, &[vec_elem(0, 1), vec_elem(0, p), vec_elem(1, 1), vec_elem(1, p)]);
    prov.subgroups.insert("Z*".into(), zstar);
    prov.subgroups.insert("Q".into(), named(&x, &[1, 4]));
    prov.elements.insert("i".into(), 1);
    prov.elements.insert("j".into(), 4);
    Ok(x.with_provenance(prov))
}

/// Index helper for `G = W ⋊ X`, `X = (A x Q) ⋊ H`.
#[derive(Clone, Copy, Debug)]
pub struct Ex2Coords;

impl Ex2Coords {
    /// `w` in `0..49`, `a = 8 i + j` for `a1^i a2^j`, `q` in `0..8`, `h` in
    /// `0..3`.
    pub fn elem(w: usize, a: usize, q: usize, h: usize) -> usize {
        w * 1536 + (a * 8 + q) * 3 + h
    }

    pub fn split(x: usize) -> (usize, usize, usize, usize) {
        let (w, r) = (x / 1536, x % 1536);
        let (n, h) = (r / 3, r % 3);
        (w, n / 8, n % 8, h)
    }
}

/// `Hm` in `GL(2, 7)` with `Hm^3 = 1`, `Hm I Hm^-1 = J`, `Hm J Hm^-1 = IJ` and
/// a one-dimensional fixed space.
fn order_three_twist(i: &Matrix, j: &Matrix) -> Result<Matrix> {
    let p = i.p;
    let one = Matrix::identity(p, 2);
    let ij = i.mul(j);
    for code in 0..(p as usize).pow(4) {
        let mut m = Matrix::zero(p, 2, 2);
        let mut c = code;
        for k in 0..4 {
            m.a[k] = (c % p as usize) as u32;
            c /= p as usize;
        }
        if m.det() == 0 || m.pow(3) != one {
            continue;
        }
        if m.mul(i) != j.mul(&m) || m.mul(j) != ij.mul(&m) {
            continue;
        }
        if m.sub(&one).rank() == 1 {
            return Ok(m);
        }
    }
    Err(GroupError::InvariantViolated(
        "no order-3 matrix realizes the automorphism with a fixed line".into(),
    ))
}

/// The order-75264 group `G = W ⋊ X` with `X = (A x Q) ⋊ H`, `A = C8 x C8`,
/// `Q = Q8`, `H = C3`, `W = F_7^2`. `H` cycles `a1 -> a2 -> (a1 a2)^-1` and
/// `b1 -> b2 -> b1 b2`; `A` centralizes `W`, `Q` acts fixed-point-freely and
/// `H` fixes a line `Z` of `W`.
pub fn example2() -> Result<FiniteGroup> {
    let c8 = FiniteGroup::cyclic(8)?;
    let a = FiniteGroup::direct_product(&c8, &c8)?;
    let q8 = generalized_quaternion(8)?;
    // alpha: a1^i a2^j -> a1^-j a2^(i-j)
    let alpha: Vec<usize> = (0..64)
        .map(|x| {
            let (i, j) = (x / 8, x % 8);
            ((8 - j) % 8) * 8 + (i + 8 - j) % 8
        })
        .collect();
    let (b1, b2) = (1usize, 4usize);
    let beta = automorphism_from_images(&q8, &[b2, q8.mul(b1, b2)])?;
    let aq = FiniteGroup::direct_product(&a, &q8)?;
    let phi: Vec<usize> = (0..512).map(|n| alpha[n / 8] * 8 + beta[n % 8]).collect();
    let c3 = FiniteGroup::cyclic(3)?;
    let act = Action::from_generator_images(&aq, &c3, &[phi])?;
    let x = FiniteGroup::semidirect_product(&aq, &c3, &act)?;

    let (mi, mj) = quaternion_matrices(7);
    let hm = order_three_twist(&mi, &mj)?;
    // matrices of Q by BFS over its generators
    let mut qm: Vec<Option<Matrix>> = vec![None; 8];
    qm[0] = Some(Matrix::identity(7, 2));
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        for (s, m) in [(b1, &mi), (b2, &mj)] {
            let qs = q8.mul(q, s);
            if qm[qs].is_none() {
                qm[qs] = Some(qm[q].as_ref().unwrap().mul(m));
                queue.push_back(qs);
            }
        }
    }
    let rho = |xi: usize| -> Matrix {
        let (n, h) = (xi / 3, xi % 3);
        qm[n % 8].as_ref().unwrap().mul(&hm.pow(h as u64))
    };
    let gen_mats: Vec<Matrix> = x.generators().iter().map(|&g| rho(g)).collect();
    let (g, _) = semidirect_with_module(&x, 7, 2, &gen_mats)?;
    debug_assert_eq!(g.order(), 75264);

    let e = Ex2Coords::elem;
    let a1 = e(0, 8, 0, 0);
    let a2 = e(0, 1, 0, 0);
    let gb1 = e(0, 0, b1, 0);
    let gb2 = e(0, 0, b2, 0);
    let c = e(0, 0, q8.mul(b1, b1), 0);
    let h = e(0, 0, 0, 1);
    let w1 = e(1, 0, 0, 0);
    let w2 = e(7, 0, 0, 0);
    let fixed: Vec<usize> = (1..49)
        .filter(|&w| {
            let v = linalg::decode(w, 7, 2);
            hm.apply(&v) == v
        })
        .collect();
    let z_gen = e(fixed[0], 0, 0, 0);

    let mut prov = Provenance::new("example2");
    for (k, v) in [("a1", a1), ("a2", a2), ("b1", gb1), ("b2", gb2), ("c", c), ("h", h)] {
        prov.elements.insert(k.into(), v);
    }
    let wset = named(&g, &[w1, w2]);
    let aset = named(&g, &[a1, a2]);
    let phi_a = named(&g, &[g.mul(a1, a1), g.mul(a2, a2)]);
    let m0 = named(&g, &[a1, a2, gb1, gb2]);
    let m1 = named(&g, &[a1, a2, c, h]);
    let bset = named(&g, &[a1, a2, h, z_gen]);
    let cset = named(&g, &[w1, w2, g.mul(a1, gb1), gb2]);
    let i_expected = named(&g, &[w1, w2, g.mul(a1, a1), g.mul(a2, a2), c]);
    let wm0 = named(&g, &[w1, w2, a1, a2, gb1, gb2]);
    let wac = named(&g, &[w1, w2, a1, a2, c]);
    let wm1 = named(&g, &[w1, w2, a1, a2, c, h]);
    // union of the conjugates of W M1
    let mut conj_union = wm1.clone();
    let mut seen = vec![wm1.clone()];
    let mut k = 0;
    while k < seen.len() {
        let cur = seen[k].clone();
        k += 1;
        for s in g.generators() {
            let cj = conjugate_set(&g, &cur, s);
            if !seen.contains(&cj) {
                conj_union = conj_union.union(&cj);
                seen.push(cj);
            }
        }
    }
    let omega_b = conj_union.difference(&i_expected);
    let omega_c = wm0.difference(&wac);
    for (name, set) in [
        ("W", wset),
        ("A", aset),
        ("Q", named(&g, &[gb1, gb2])),
        ("H", named(&g, &[h])),
        ("Z", named(&g, &[z_gen])),
        ("PhiA", phi_a),
        ("M0", m0),
        ("M1", m1),
        ("B", bset),
        ("C", cset),
        ("I_expected", i_expected),
        ("WM0", wm0),
        ("WM1", wm1),
        ("Omega_B", omega_b),
        ("Omega_C", omega_c),
    ] {
        prov.subgroups.insert(name.into(), set);
    }
    prov.elements
        .insert("WM1_conjugates".into(), seen.len());
    Ok(g.with_provenance(prov))
}

/// `(F_2^2 x F_2^2) ⋊ C_3` with the same order-3 matrix on both factors.
pub fn example2_quotient() -> Result<FiniteGroup> {
    let m = Matrix::from_rows(2, &[vec![0, 1], vec![1, 1]]);
    let c3 = FiniteGroup::cyclic(3)?;
    let (g, _) = semidirect_with_module(&c3, 2, 4, &[Matrix::block_diag(&[m.clone(), m])])?;
    debug_assert_eq!(elementary_abelian(2, 4)?.order() * 3, g.order());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_inner_shape() {
        let x = example1_inner(3).unwrap();
        assert_eq!(x.order(), 5832);
        let prov = x.provenance();
        for v in ["V1", "V2", "V3"] {
            assert_eq!(prov.subgroups[v].len(), 9);
        }
        assert_eq!(prov.subgroups["T"].len(), 729);
        assert_eq!(prov.subgroups["Q"].len(), 8);
    }

    #[test]
    fn example2_shape() {
        let g = example2().unwrap();
        assert_eq!(g.order(), 75264);
        let prov = g.provenance();
        let sizes: Vec<(&str, usize)> = [
            "W", "A", "Q", "H", "Z", "PhiA", "M0", "M1", "B", "C", "I_expected", "Omega_B",
            "Omega_C",
        ]
        .iter()
        .map(|k| (*k, prov.subgroups[*k].len()))
        .collect();
        assert_eq!(
            sizes,
            vec![
                ("W", 49),
                ("A", 64),
                ("Q", 8),
                ("H", 3),
                ("Z", 7),
                ("PhiA", 16),
                ("M0", 512),
                ("M1", 384),
                ("B", 1344),
                ("C", 1568),
                ("I_expected", 1568),
                ("Omega_B", 54880),
                ("Omega_C", 18816),
            ]
        );
        assert_eq!(prov.elements["WM1_conjugates"], 4);
    }

    #[test]
    fn example2_quotient_order() {
        let g = example2_quotient().unwrap();
        assert_eq!(g.order(), 48);
        g.check_invariants().unwrap();
    }
}
