//! Brute-force reference computations used to cross-check the fast paths.

use crate::error::{Error, Result};
use crate::group::{permutations, FiniteGroup};

/// Largest group order the oracle will enumerate (`(n-1)!` bijections).
pub const MAX_ORACLE_ORDER: usize = 9;

/// Every automorphism of `g`, found by testing all bijections that fix the
/// identity. Sorted lexicographically.
pub fn brute_force_automorphisms(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > MAX_ORACLE_ORDER {
        return Err(Error::Unsupported(format!("oracle limited to order {MAX_ORACLE_ORDER}, got {n}")));
    }
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut perms = Vec::new();
    permutations(&mut (0..others.len()).collect(), 0, &mut perms);
    let mut out: Vec<Vec<usize>> = perms
        .into_iter()
        .map(|p| {
            let mut phi = vec![e; n];
            for (i, &x) in others.iter().enumerate() {
                phi[x] = others[p[i]];
            }
            phi
        })
        .filter(|phi| (0..n).all(|a| (0..n).all(|b| phi[g.mul(a, b)] == g.mul(phi[a], phi[b]))))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::enumerate_automorphisms;
    use crate::group::catalog;

    #[test]
    fn agrees_with_generator_search() {
        for g in catalog().into_iter().filter(|g| g.order() <= MAX_ORACLE_ORDER) {
            assert_eq!(brute_force_automorphisms(&g).unwrap(), enumerate_automorphisms(&g), "{}", g.name);
        }
    }
}
