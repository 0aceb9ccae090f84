use std::collections::VecDeque;

use super::{FiniteGroup, Provenance};
use crate::error::{GroupError, Result};

/// An action of `H` on `N` by automorphisms, stored as a `|H| x |N|` table:
/// `image(h, n)` plays the role of `h n h^-1` in the semidirect product.
#[derive(Clone, Debug)]
pub struct Action {
    n: usize,
    table: Vec<u32>,
}

impl Action {
    pub fn trivial(normal: &FiniteGroup, top: &FiniteGroup) -> Action {
        let n = normal.order();
        let mut table = Vec::with_capacity(n * top.order());
        for _ in 0..top.order() {
            table.extend((0..n as u32).collect::<Vec<_>>());
        }
        Action { n, table }
    }

    /// Extends automorphisms given for each generator of `top` to the whole
    /// of `top`, checking that the assignment is a homomorphism into Aut(N).
    pub fn from_generator_images(
        normal: &FiniteGroup,
        top: &FiniteGroup,
        images: &[Vec<usize>],
    ) -> Result<Action> {
        let gens = top.generators();
        if images.len() != gens.len() {
            return Err(GroupError::NotAnAction(format!(
                "{} automorphisms for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = normal.order();
        for (k, img) in images.iter().enumerate() {
            check_automorphism(normal, img)
                .map_err(|e| GroupError::NotAnAction(format!("generator {k}: {e}")))?;
        }
        let m = top.order();
        let mut table = vec![u32::MAX; m * n];
        for x in 0..n {
            table[x] = x as u32;
        }
        let mut queue = VecDeque::from([0usize]);
        let mut done = vec![false; m];
        done[0] = true;
        while let Some(h) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let hs = top.mul(h, s);
                if !done[hs] {
                    done[hs] = true;
                    for x in 0..n {
                        let y = images[k][x];
                        table[hs * n + x] = table[h * n + y];
                    }
                    queue.push_back(hs);
                }
            }
        }
        if done.iter().any(|d| !d) {
            return Err(GroupError::NotAnAction(
                "generators of the acting group do not generate it".into(),
            ));
        }
        let act = Action { n, table };
        // act(h s) = act(h) o act(s) for every h and generator s
        for h in 0..m {
            for (k, &s) in gens.iter().enumerate() {
                let hs = top.mul(h, s);
                for x in 0..n {
                    if act.image(hs, x) != act.image(h, images[k][x]) {
                        return Err(GroupError::NotAnAction(format!(
                            "relation fails at ({h}, {s}) on {x}"
                        )));
                    }
                }
            }
        }
        Ok(act)
    }

    #[inline]
    pub fn image(&self, h: usize, x: usize) -> usize {
        self.table[h * self.n + x] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.table
            .chunks(self.n)
            .all(|row| row.iter().enumerate().all(|(i, &v)| v as usize == i))
    }
}

fn check_automorphism(g: &FiniteGroup, img: &[usize]) -> Result<()> {
    let n = g.order();
    if img.len() != n {
        return Err(GroupError::InvalidParameters(format!(
            "map has {} entries, group has order {n}",
            img.len()
        )));
    }
    let mut seen = vec![false; n];
    for &y in img {
        if y >= n || seen[y] {
            return Err(GroupError::InvalidParameters("map is not a bijection".into()));
        }
        seen[y] = true;
    }
    let gens = g.generators();
    for a in 0..n {
        for &b in &gens {
            if img[g.mul(a, b)] != g.mul(img[a], img[b]) {
                return Err(GroupError::InvalidParameters(format!(
                    "map does not respect the product {a}*{b}"
                )));
            }
        }
    }
    Ok(())
}

/// Extends generator images to an automorphism of `g`. `images[k]` is the
/// image of `g.generators()[k]`.
pub fn automorphism_from_images(g: &FiniteGroup, images: &[usize]) -> Result<Vec<usize>> {
    let gens = g.generators();
    if images.len() != gens.len() {
        return Err(GroupError::InvalidParameters(format!(
            "{} images for {} generators",
            images.len(),
            gens.len()
        )));
    }
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let xs = g.mul(x, s);
            let want = g.mul(map[x], images[k]);
            if map[xs] == usize::MAX {
                map[xs] = want;
                queue.push_back(xs);
            } else if map[xs] != want {
                return Err(GroupError::InvalidParameters(format!(
                    "generator images do not define a homomorphism (at element {xs})"
                )));
            }
        }
    }
    check_automorphism(g, &map)?;
    Ok(map)
}

impl FiniteGroup {
    /// `A x B` with element `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let desc = format!(
            "({}) x ({})",
            a.provenance().description,
            b.provenance().description
        );
        FiniteGroup::from_product(a.clone(), b.clone(), None, Provenance::new(desc))
    }

    /// `N : H` with `(n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2)`, element
    /// `(n, h)` at index `n * |H| + h`.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        top: &FiniteGroup,
        action: &Action,
    ) -> Result<FiniteGroup> {
        if action.n != normal.order() || action.table.len() != normal.order() * top.order() {
            return Err(GroupError::NotAnAction("action table has the wrong shape".into()));
        }
        let desc = format!(
            "({}) : ({})",
            normal.provenance().description,
            top.provenance().description
        );
        let act = if action.is_trivial() {
            None
        } else {
            Some(action.table.clone())
        };
        FiniteGroup::from_product(normal.clone(), top.clone(), act, Provenance::new(desc))
    }
}
