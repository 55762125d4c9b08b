//! Relations of the Lazard ring, read off from the formal group law axioms
//! expanded over the free ring `Z[A_ij]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{AMonomial, APoly, Generator};

/// Truncated series in `u, v, w` with `Z[A_ij]` coefficients.
type Tri = BTreeMap<[u32; 3], APoly>;

fn total(e: &[u32; 3]) -> u32 {
    e[0] + e[1] + e[2]
}

fn tri_var(k: usize) -> Tri {
    let mut e = [0; 3];
    e[k] = 1;
    Tri::from([(e, APoly::one())])
}

fn tri_add_into(acc: &mut Tri, x: &Tri) {
    for (e, c) in x {
        let slot = acc.entry(*e).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            acc.remove(e);
        }
    }
}

fn tri_mul(x: &Tri, y: &Tri, max_total: u32) -> Tri {
    let mut out = Tri::new();
    for (ex, cx) in x {
        for (ey, cy) in y {
            let e = [ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]];
            if total(&e) > max_total {
                continue;
            }
            let slot = out.entry(e).or_default();
            slot.add_assign(&cx.mul(cy));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `F(x, y) = x + y + sum A_ij x^i y^j`, truncated at total degree `max_total`.
/// Both arguments must lack a constant term.
fn apply_law(x: &Tri, y: &Tri, max_total: u32) -> Tri {
    let powers = |s: &Tri| {
        let mut p = vec![Tri::from([([0, 0, 0], APoly::one())])];
        for _ in 0..max_total {
            let next = tri_mul(p.last().unwrap(), s, max_total);
            p.push(next);
        }
        p
    };
    let xp = powers(x);
    let yp = powers(y);
    let mut out = Tri::new();
    tri_add_into(&mut out, x);
    tri_add_into(&mut out, y);
    for i in 1..max_total {
        for j in 1..=max_total - i {
            let a = AMonomial::generator(Generator::new(i, j));
            let prod = tri_mul(&xp[i as usize], &yp[j as usize], max_total);
            let scaled: Tri = prod
                .into_iter()
                .map(|(e, c)| (e, c.mul_monomial(&a)))
                .collect();
            tri_add_into(&mut out, &scaled);
        }
    }
    out
}

/// Coefficients of `F(F(u,v),w) - F(u,F(v,w))`, keyed by `(a, b, c)` exponent
/// of `u^a v^b w^c`; the coefficient lies in codegree `a + b + c - 1`.
pub fn associativity_defects(max_total: u32) -> BTreeMap<[u32; 3], APoly> {
    let (u, v, w) = (tri_var(0), tri_var(1), tri_var(2));
    let lhs = apply_law(&apply_law(&u, &v, max_total), &w, max_total);
    let rhs = apply_law(&u, &apply_law(&v, &w, max_total), max_total);
    let mut out = BTreeMap::new();
    for e in lhs.keys().chain(rhs.keys()) {
        if out.contains_key(e) {
            continue;
        }
        let l = lhs.get(e).cloned().unwrap_or_default();
        let r = rhs.get(e).cloned().unwrap_or_default();
        let d = l.sub(&r);
        if !d.is_zero() {
            out.insert(*e, d);
        }
    }
    out
}

/// Every relation in codegrees `0..=max_codegree`, grouped by codegree:
/// `A_ij - A_ji` for `i < j`, then the associativity coefficients.
/// Unitality holds identically for a law of the shape `u + v + sum A_ij u^i v^j`.
pub fn harvest(max_codegree: usize) -> Vec<Vec<APoly>> {
    let mut out = vec![Vec::new(); max_codegree + 1];
    for g in Generator::up_to(max_codegree) {
        if g.i < g.j {
            let swapped = Generator::new(g.j, g.i);
            out[g.codegree()].push(APoly::from_terms([
                (AMonomial::generator(g), BigInt::one()),
                (AMonomial::generator(swapped), -BigInt::one()),
            ]));
        }
    }
    let max_total = max_codegree as u32 + 1;
    for (e, rel) in associativity_defects(max_total) {
        let d = total(&e) as usize - 1;
        if d <= max_codegree {
            out[d].push(rel);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uvw_coefficient_is_twice_a21_minus_a12() {
        let defects = associativity_defects(3);
        let uvw = defects.get(&[1, 1, 1]).unwrap();
        let expected = APoly::generator(2, 1)
            .sub(&APoly::generator(1, 2))
            .scale(&BigInt::from(2));
        assert_eq!(*uvw, expected);
    }

    #[test]
    fn defects_are_homogeneous() {
        for (e, rel) in associativity_defects(5) {
            assert_eq!(rel.codegrees(), vec![total(&e) as usize - 1]);
            assert!(e.iter().all(|&x| x >= 1));
        }
    }

    #[test]
    fn harvest_groups_by_codegree() {
        let rels = harvest(2);
        assert!(rels[0].is_empty());
        assert!(rels[1].is_empty());
        assert!(rels[2].contains(&APoly::generator(1, 2).sub(&APoly::generator(2, 1))));
    }
}
