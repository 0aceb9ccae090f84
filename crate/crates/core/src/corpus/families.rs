use std::fmt;

use crate::error::{GroupError, Result};
use crate::group::{parse_cycles, Action, FiniteGroup, Permutation};
use crate::linalg::{self, Matrix};

use super::module_action::semidirect_with_module;

/// A named group family with parameters, e.g. `dihedral(5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    GeneralizedQuaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian(usize, usize),
    Sylow2Sym8,
    Example1Inner(usize),
    Example2,
    /// `C_p ⋊ C_q` with `q | p - 1`.
    Frobenius(usize, usize),
    Sl23,
    /// `F_p^2 ⋊ Q_8`, `p` odd.
    Q8Plane(usize),
    /// `F_p^2 ⋊ S_3` through the reflection representation, `p != 3`.
    S3Plane(usize),
    /// The order-48 quotient `(F_2^2)^2 ⋊ C_3` of the second example.
    Example2Quotient,
    Product(Box<FamilySpec>, Box<FamilySpec>),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cyclic(n) => write!(f, "cyclic({n})"),
            Dihedral(n) => write!(f, "dihedral({n})"),
            GeneralizedQuaternion(n) => write!(f, "generalized_quaternion({n})"),
            Symmetric(n) => write!(f, "symmetric({n})"),
            Alternating(n) => write!(f, "alternating({n})"),
            ElementaryAbelian(p, k) => write!(f, "elementary_abelian({p},{k})"),
            Sylow2Sym8 => write!(f, "sylow2_sym8"),
            Example1Inner(p) => write!(f, "example1_inner({p})"),
            Example2 => write!(f, "example2"),
            Frobenius(p, q) => write!(f, "frobenius({p},{q})"),
            Sl23 => write!(f, "sl2_3"),
            Q8Plane(p) => write!(f, "q8_plane({p})"),
            S3Plane(p) => write!(f, "s3_plane({p})"),
            Example2Quotient => write!(f, "example2_quotient"),
            Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let (spec, rest) = parse_spec(text.trim())?;
        if !rest.trim().is_empty() {
            return Err(GroupError::Parse(format!("trailing input {rest:?}")));
        }
        Ok(spec)
    }

    pub fn construct(&self) -> Result<FiniteGroup> {
        use FamilySpec::*;
        let g = match self {
            Cyclic(n) => {
                if *n == 0 {
                    return Err(GroupError::InvalidParameters("cyclic(0)".into()));
                }
                FiniteGroup::cyclic(*n)?
            }
            Dihedral(n) => dihedral(*n)?,
            GeneralizedQuaternion(n) => generalized_quaternion(*n)?,
            Symmetric(n) => symmetric(*n)?,
            Alternating(n) => alternating(*n)?,
            ElementaryAbelian(p, k) => elementary_abelian(*p, *k)?,
            Sylow2Sym8 => sylow2_sym8()?,
            Example1Inner(p) => super::examples::example1_inner(*p)?,
            Example2 => super::examples::example2()?,
            Frobenius(p, q) => frobenius(*p, *q)?,
            Sl23 => sl2_3()?,
            Q8Plane(p) => q8_plane(*p)?,
            S3Plane(p) => s3_plane(*p)?,
            Example2Quotient => super::examples::example2_quotient()?,
            Product(a, b) => FiniteGroup::direct_product(&a.construct()?, &b.construct()?)?,
        };
        let mut prov = g.provenance().clone();
        prov.description = self.to_string();
        Ok(g.with_provenance(prov))
    }

    /// Order predicted by the family formula.
    pub fn expected_order(&self) -> usize {
        use FamilySpec::*;
        match self {
            Cyclic(n) => *n,
            Dihedral(n) => 2 * n,
            GeneralizedQuaternion(n) => *n,
            Symmetric(n) => (1..=*n).product(),
            Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            ElementaryAbelian(p, k) => p.pow(*k as u32),
            Sylow2Sym8 => 128,
            Example1Inner(p) => p.pow(6) * 8,
            Example2 => 49 * 64 * 8 * 3,
            Frobenius(p, q) => p * q,
            Sl23 => 24,
            Q8Plane(p) => p * p * 8,
            S3Plane(p) => p * p * 6,
            Example2Quotient => 48,
            Product(a, b) => a.expected_order() * b.expected_order(),
        }
    }
}

fn parse_spec(s: &str) -> Result<(FamilySpec, &str)> {
    let s = s.trim_start();
    let name_end = s
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(s.len());
    let name = &s[..name_end];
    let mut rest = s[name_end..].trim_start();
    let mut args: Vec<Arg> = Vec::new();
    if let Some(r) = rest.strip_prefix('(') {
        rest = r;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix(')') {
                rest = r;
                break;
            }
            if rest.starts_with(|c: char| c.is_ascii_digit()) {
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                args.push(Arg::Num(rest[..end].parse().unwrap()));
                rest = &rest[end..];
            } else {
                let (sub, r) = parse_spec(rest)?;
                args.push(Arg::Spec(sub));
                rest = r;
            }
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r;
            } else if !rest.starts_with(')') {
                return Err(GroupError::Parse(format!("expected ',' or ')' in {s:?}")));
            }
        }
    }
    let nums: Vec<usize> = args
        .iter()
        .filter_map(|a| match a {
            Arg::Num(n) => Some(*n),
            _ => None,
        })
        .collect();
    let want = |k: usize| -> Result<()> {
        if nums.len() == k && args.len() == k {
            Ok(())
        } else {
            Err(GroupError::Parse(format!("{name} takes {k} integer arguments")))
        }
    };
    use FamilySpec::*;
    let spec = match name {
        "cyclic" => {
            want(1)?;
            Cyclic(nums[0])
        }
        "dihedral" => {
            want(1)?;
            Dihedral(nums[0])
        }
        "generalized_quaternion" | "quaternion" => {
            want(1)?;
            GeneralizedQuaternion(nums[0])
        }
        "symmetric" => {
            want(1)?;
            Symmetric(nums[0])
        }
        "alternating" => {
            want(1)?;
            Alternating(nums[0])
        }
        "elementary_abelian" => {
            want(2)?;
            ElementaryAbelian(nums[0], nums[1])
        }
        "sylow2_sym8" => {
            want(0)?;
            Sylow2Sym8
        }
        "example1_inner" => {
            want(1)?;
            Example1Inner(nums[0])
        }
        "example2" => {
            want(0)?;
            Example2
        }
        "example2_quotient" => {
            want(0)?;
            Example2Quotient
        }
        "frobenius" => {
            want(2)?;
            Frobenius(nums[0], nums[1])
        }
        "sl2_3" => {
            want(0)?;
            Sl23
        }
        "q8_plane" => {
            want(1)?;
            Q8Plane(nums[0])
        }
        "s3_plane" => {
            want(1)?;
            S3Plane(nums[0])
        }
        "product" => match args.as_slice() {
            [Arg::Spec(a), Arg::Spec(b)] => Product(Box::new(a.clone()), Box::new(b.clone())),
            _ => return Err(GroupError::Parse("product takes two family arguments".into())),
        },
        _ => return Err(GroupError::Parse(format!("unknown family {name:?}"))),
    };
    Ok((spec, rest))
}

enum Arg {
    Num(usize),
    Spec(FamilySpec),
}

/// Dihedral group of order `2n`: rotations `r^i` at index `i`, reflections
/// `r^i s` at `n + i`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(GroupError::InvalidParameters("dihedral(0)".into()));
    }
    let gens: Vec<usize> = if n == 1 { vec![1] } else { vec![1, n] };
    FiniteGroup::from_mul_fn(2 * n, &gens, format!("dihedral({n})"), |a, b| {
        let (i, s) = (a % n, a / n);
        let (j, t) = (b % n, b / n);
        // r^i s^s r^j s^t = r^(i + (-1)^s j) s^(s+t)
        let k = if s == 0 { (i + j) % n } else { (i + n - j) % n };
        k + n * ((s + t) % 2)
    })
}

/// Generalized quaternion group of order `n = 2^k >= 8`: `a^i b^j` at index
/// `i + (n/2) j`, with `a^(n/2) = 1`, `b^2 = a^(n/4)`, `b a b^-1 = a^-1`.
pub fn generalized_quaternion(n: usize) -> Result<FiniteGroup> {
    if n < 8 || !n.is_power_of_two() {
        return Err(GroupError::InvalidParameters(format!(
            "generalized_quaternion needs a power of two >= 8, got {n}"
        )));
    }
    let m = n / 2;
    FiniteGroup::from_mul_fn(n, &[1, m], format!("generalized_quaternion({n})"), |x, y| {
        let (i, s) = (x % m, x / m);
        let (j, t) = (y % m, y / m);
        let k = if s == 0 { (i + j) % m } else { (i + m - j) % m };
        if s == 1 && t == 1 {
            (k + m / 2) % m
        } else {
            k + m * ((s + t) % 2)
        }
    })
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n <= 1 {
        return FiniteGroup::cyclic(1);
    }
    let t = parse_cycles("(0 1)", n)?;
    let c = Permutation((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    let gens = if n == 2 { vec![t] } else { vec![t, c] };
    FiniteGroup::from_permutation_generators(&gens, n)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n <= 2 {
        return FiniteGroup::cyclic(1);
    }
    let three = parse_cycles("(0 1 2)", n)?;
    if n == 3 {
        return FiniteGroup::from_permutation_generators(&[three], n);
    }
    // (0 1 ... n-1) is even for odd n; otherwise use (1 2 ... n-1)
    let long: Vec<u32> = if n % 2 == 1 {
        (0..n as u32).map(|i| (i + 1) % n as u32).collect()
    } else {
        let mut v: Vec<u32> = (0..n as u32).collect();
        for i in 1..n {
            v[i] = if i + 1 == n { 1 } else { i as u32 + 1 };
        }
        v
    };
    FiniteGroup::from_permutation_generators(&[three, Permutation(long)], n)
}

/// `(C_p)^k` with vector `v` at index `sum v_i p^i`.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !linalg::is_prime(p as u32) {
        return Err(GroupError::InvalidParameters(format!("{p} is not prime")));
    }
    let n = p.pow(k as u32);
    let gens: Vec<usize> = (0..k).map(|i| p.pow(i as u32)).collect();
    FiniteGroup::from_mul_fn(n, &gens, format!("elementary_abelian({p},{k})"), |a, b| {
        let mut r = 0;
        let mut place = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..k {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    })
}

pub fn sylow2_sym8() -> Result<FiniteGroup> {
    let gens = ["(0 1)", "(2 3)", "(0 2)(1 3)", "(0 4)(1 5)(2 6)(3 7)"]
        .iter()
        .map(|c| parse_cycles(c, 8))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutation_generators(&gens, 8)
}

/// `C_p ⋊ C_q` with the generator of `C_q` acting as multiplication by an
/// element of order `q` in `F_p^*`.
pub fn frobenius(p: usize, q: usize) -> Result<FiniteGroup> {
    if !linalg::is_prime(p as u32) || q == 0 || (p - 1) % q != 0 {
        return Err(GroupError::InvalidParameters(format!(
            "frobenius({p},{q}) needs a prime p with q | p-1"
        )));
    }
    let r = (1..p)
        .find(|&r| {
            let mut x = 1;
            let mut ord = 0;
            loop {
                x = x * r % p;
                ord += 1;
                if x == 1 {
                    break;
                }
            }
            ord == q
        })
        .unwrap();
    let cp = FiniteGroup::cyclic(p)?;
    let cq = FiniteGroup::cyclic(q)?;
    let img: Vec<usize> = (0..p).map(|x| x * r % p).collect();
    let act = if q == 1 {
        Action::trivial(&cp, &cq)
    } else {
        Action::from_generator_images(&cp, &cq, &[img])?
    };
    FiniteGroup::semidirect_product(&cp, &cq, &act)
}

/// Matrix group generated by `mats`, tabled.
pub fn matrix_group(mats: &[Matrix], description: &str) -> Result<FiniteGroup> {
    let p = mats[0].p;
    let d = mats[0].rows;
    let mut elems = vec![Matrix::identity(p, d)];
    let mut index = std::collections::HashMap::new();
    index.insert(elems[0].clone(), 0usize);
    let mut i = 0;
    while i < elems.len() {
        for m in mats {
            let x = elems[i].mul(m);
            if !index.contains_key(&x) {
                index.insert(x.clone(), elems.len());
                elems.push(x);
                if elems.len() > crate::group::TABLE_LIMIT * 4 {
                    return Err(crate::error::cap_exceeded("matrix group", crate::group::TABLE_LIMIT * 4));
                }
            }
        }
        i += 1;
    }
    let gens: Vec<usize> = mats.iter().map(|m| index[m]).filter(|&x| x != 0).collect();
    FiniteGroup::from_mul_fn(elems.len(), &gens, description, |a, b| {
        index[&elems[a].mul(&elems[b])]
    })
}

pub fn sl2_3() -> Result<FiniteGroup> {
    let a = Matrix::from_rows(3, &[vec![1, 1], vec![0, 1]]);
    let b = Matrix::from_rows(3, &[vec![1, 0], vec![1, 1]]);
    matrix_group(&[a, b], "sl2_3")
}

/// `I, J` in `SL(2, p)` with `I^2 = J^2 = -1` and `JI = -IJ`: the images of
/// the two standard generators of `Q_8`.
pub fn quaternion_matrices(p: u32) -> (Matrix, Matrix) {
    let (a, b) = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| (a * a + b * b + 1) % p == 0)
        .expect("-1 is a sum of two squares mod an odd prime");
    let i = Matrix::from_rows(p, &[vec![0, -1], vec![1, 0]]);
    let j = Matrix::from_rows(p, &[vec![a as i64, b as i64], vec![b as i64, -(a as i64)]]);
    (i, j)
}

pub fn q8_plane(p: usize) -> Result<FiniteGroup> {
    if p % 2 == 0 || !linalg::is_prime(p as u32) {
        return Err(GroupError::InvalidParameters(format!("q8_plane needs an odd prime, got {p}")));
    }
    let q8 = generalized_quaternion(8)?;
    let (i, j) = quaternion_matrices(p as u32);
    Ok(semidirect_with_module(&q8, p as u32, 2, &[i, j])?.0)
}

pub fn s3_plane(p: usize) -> Result<FiniteGroup> {
    if p == 3 || !linalg::is_prime(p as u32) {
        return Err(GroupError::InvalidParameters(format!(
            "s3_plane needs a prime other than 3, got {p}"
        )));
    }
    // reflection representation on {x : x0 + x1 + x2 = 0} in the basis
    // e0 - e1, e1 - e2: images of (0 1) and (0 1 2)
    let t = Matrix::from_rows(p as u32, &[vec![-1, 1], vec![0, 1]]);
    let c = Matrix::from_rows(p as u32, &[vec![0, -1], vec![1, -1]]);
    let s3 = matrix_group(&[t.clone(), c.clone()], "symmetric(3)")?;
    Ok(semidirect_with_module(&s3, p as u32, 2, &[t, c])?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    #[test]
    fn family_orders_and_profiles() {
        for spec in [
            "cyclic(7)",
            "dihedral(5)",
            "generalized_quaternion(16)",
            "symmetric(4)",
            "alternating(5)",
            "elementary_abelian(3,2)",
            "sylow2_sym8",
            "frobenius(7,3)",
            "sl2_3",
            "q8_plane(3)",
            "s3_plane(5)",
            "product(cyclic(2),symmetric(3))",
        ] {
            let f = FamilySpec::parse(spec).unwrap();
            assert_eq!(f.to_string(), spec);
            let g = f.construct().unwrap();
            assert_eq!(g.order(), f.expected_order(), "{spec}");
            g.check_invariants().unwrap();
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q8 = generalized_quaternion(8).unwrap();
        assert_eq!((0..8).filter(|&x| q8.elem_order(x) == 2).count(), 1);
        let mut sizes = conjugacy_classes(&q8).sizes;
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let q16 = generalized_quaternion(16).unwrap();
        assert_eq!((0..16).filter(|&x| q16.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn products_from_the_examples() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::direct_product(&c2, &c2).unwrap();
        assert_eq!((0..4).filter(|&x| k.elem_order(x) == 2).count(), 3);
        let c8 = FiniteGroup::cyclic(8).unwrap();
        let a = FiniteGroup::direct_product(&c8, &c8).unwrap();
        // oracle: pairs (i, j) with lcm(|i|, |j|) = 8
        let ord = |i: usize| 8 / gcd(i, 8);
        let expect = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| lcm(ord(i), ord(j)) == 8)
            .count();
        assert_eq!(expect, 48);
        assert_eq!((0..64).filter(|&x| a.elem_order(x) == 8).count(), expect);
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn lcm(a: usize, b: usize) -> usize {
        a / gcd(a, b) * b
    }

    #[test]
    fn bad_parameters() {
        assert!(FamilySpec::parse("frobenius(7,4)").unwrap().construct().is_err());
        assert!(FamilySpec::parse("nonsense(3)").is_err());
        assert!(FamilySpec::parse("cyclic(3").is_err());
        assert!(generalized_quaternion(12).is_err());
    }
}
