//! Finite groups given by multiplication tables, plus a catalog of named groups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on the element indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// On-disk form of a group: `{ "order": n, "table": [[...]] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validate a multiplication table (`table[a][b] = ab`).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {a} is out of range")));
            }
            if !is_permutation(row) {
                return Err(Error::InvalidGroup(format!("row {a} repeats an element (not a Latin square)")));
            }
        }
        for b in 0..n {
            let column: Vec<usize> = (0..n).map(|a| table[a][b]).collect();
            if !is_permutation(&column) {
                return Err(Error::InvalidGroup(format!("column {b} repeats an element (not a Latin square)")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square has inverses"))
            .collect();
        Ok(Self {
            name: name.into(),
            table,
            identity,
            inverse,
        })
    }

    pub fn from_group_table(name: impl Into<String>, t: GroupTable) -> Result<Self> {
        if t.order != t.table.len() {
            return Err(Error::InvalidGroup(format!("order {} but {} rows", t.order, t.table.len())));
        }
        Self::from_table(name, t.table)
    }

    pub fn to_group_table(&self) -> GroupTable {
        GroupTable {
            order: self.order(),
            table: self.table.clone(),
        }
    }

    /// Build from an associative product on a list of elements; the first
    /// element must be the identity.
    pub fn from_elements<T: Ord + Clone>(name: impl Into<String>, elements: &[T], mul: impl Fn(&T, &T) -> T) -> Result<Self> {
        let index: BTreeMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let ab = mul(a, b);
                row.push(*index.get(&ab).ok_or_else(|| Error::InvalidGroup("product leaves the element set".into()))?);
            }
            table.push(row);
        }
        Self::from_table(name, table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn orders(&self) -> Vec<usize> {
        (0..self.order()).map(|a| self.element_order(a)).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.orders().into_iter().fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders().contains(&self.order())
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// A small generating set, picking elements of largest order first.
    pub fn generators(&self) -> Vec<usize> {
        let orders = self.orders();
        let mut candidates: Vec<usize> = (0..self.order()).filter(|&a| a != self.identity).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for a in candidates {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Direct product with index `(a, b) ↦ a·|other| + b`.
    pub fn product(&self, other: &Self) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table(format!("{}x{}", self.name, other.name), table).expect("direct product of groups")
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter().all(|&x| x < row.len() && !std::mem::replace(&mut seen[x], true))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(format!("Z{n}"), table)
}

/// Permutations of `n ≤ 4` points in lexicographic order, composed as
/// `(στ)(i) = σ(τ(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 4 {
        return Err(Error::UnknownGroup(format!("S{n} (supported: S1..S4)")));
    }
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    FiniteGroup::from_elements(format!("S{n}"), &perms, |s, t| t.iter().map(|&i| s[i]).collect::<Vec<_>>())
}

pub(crate) fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// Symmetries of the regular `n`-gon (order `2n`); `r^k s^f` has index `f·n + k`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("dihedral group of a 0-gon".into()));
    }
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |k| (f, k))).collect();
    FiniteGroup::from_elements(format!("D{n}"), &elems, |&(f, a), &(g, b)| {
        let b = if f == 0 { b } else { (n - b) % n };
        ((f + g) % 2, (a + b) % n)
    })
}

/// Quaternion group `{±1, ±i, ±j, ±k}`; `±u` has index `sign·4 + u`.
pub fn quaternion8() -> Result<FiniteGroup> {
    // unit products: (sign, unit) for 1,i,j,k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..4).map(move |u| (s, u))).collect();
    FiniteGroup::from_elements("Q8", &elems, |&(s, u), &(t, v)| {
        let (sign, w) = UNIT[u][v];
        ((s + t + sign) % 2, w)
    })
}

pub fn klein4() -> Result<FiniteGroup> {
    Ok(cyclic(2)?.product(&cyclic(2)?).renamed("K4"))
}

impl FiniteGroup {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Parse names such as `Z4`, `C5`, `S3`, `D4`, `Q8`, `K4`, `V4`, `Z2xZ3`.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let parts: Vec<&str> = name.split(['x', '*']).map(str::trim).collect();
    if parts.len() > 1 {
        let mut g = named_group(parts[0])?;
        for p in &parts[1..] {
            g = g.product(&named_group(p)?);
        }
        return Ok(g.renamed(name));
    }
    let unknown = || Error::UnknownGroup(name.to_string());
    match name {
        "Q8" => return quaternion8(),
        "K4" | "V4" => return klein4(),
        _ => {}
    }
    let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match head {
        "Z" | "C" => cyclic(n),
        "S" => symmetric(n),
        "D" => dihedral(n),
        _ => Err(unknown()),
    }
}

/// The built-in catalog `Z2..Z8, K4, S3, S4, D4, Q8`.
pub fn catalog() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (2..=8).map(|n| cyclic(n).expect("cyclic")).collect();
    out.push(klein4().expect("klein4"));
    out.push(symmetric(3).expect("S3"));
    out.push(symmetric(4).expect("S4"));
    out.push(dihedral(4).expect("D4"));
    out.push(quaternion8().expect("Q8"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_valid() {
        let orders: Vec<usize> = catalog().iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![2, 3, 4, 5, 6, 7, 8, 4, 6, 24, 8, 8]);
        for g in catalog() {
            assert_eq!(g.identity(), 0, "{}", g.name);
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(quaternion8().unwrap().orders().iter().filter(|&&o| o == 4).count() == 6);
        assert_eq!(dihedral(4).unwrap().orders().iter().filter(|&&o| o == 2).count(), 5);
        assert!(cyclic(6).unwrap().is_cyclic());
        assert!(!klein4().unwrap().is_cyclic());
        assert_eq!(symmetric(4).unwrap().exponent(), 12);
    }

    #[test]
    fn names_parse() {
        assert_eq!(named_group("Z2xZ3").unwrap().order(), 6);
        assert!(named_group("Z2xZ3").unwrap().is_cyclic());
        assert_eq!(named_group("D4").unwrap().order(), 8);
        assert!(matches!(named_group("S5"), Err(Error::UnknownGroup(_))));
        assert!(matches!(named_group("Foo"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn rejects_bad_tables() {
        let repeated = vec![vec![0, 0], vec![1, 0]];
        assert!(matches!(FiniteGroup::from_table("bad", repeated), Err(Error::InvalidGroup(_))));
        // a Latin square that is not associative (no identity-preserving structure)
        let latin = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        assert!(FiniteGroup::from_table("bad", latin).is_err());
    }

    #[test]
    fn generators_generate() {
        for g in catalog() {
            assert_eq!(g.generated(&g.generators()).len(), g.order(), "{}", g.name);
        }
    }
}
