//! Finite groups as dense Cayley tables.
//!
//! Elements are the integers `0..order`. Each constructor fixes a canonical
//! enumeration order which every file format relies on:
//!
//! * `C<n>`: element `k` is `k mod n`, identity `0`.
//! * `D<n>`: element `j*n + k` is `s^j r^k` with `r^n = s^2 = e` and
//!   `s r s = r^-1`, identity `0`.
//! * `S<n>`: permutations of `0..n` in lexicographic one-line order, so the
//!   identity is element `0`. The product `x*y` is the composition
//!   "apply `y`, then `x`".
//! * `AxB`: element `(a, b)` is `a*|B| + b`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 48;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOCIATIVITY_ORDER`].
pub const RANDOM_ASSOCIATIVITY_TRIPLES: usize = 10_000;
/// Default cap on the order of groups whose subgroups are enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 48;
/// Largest `n` accepted by [`make_symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 7;

const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550_c1a7_1e00;

/// How a group was built. Drives the choice of irreducible representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Builds the group this spec describes.
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => make_cyclic(*n),
            GroupSpec::Dihedral(n) => make_dihedral(*n),
            GroupSpec::Symmetric(n) => make_symmetric(*n),
            GroupSpec::Product(a, b) => Ok(direct_product(&a.build()?, &b.build()?)),
        }
    }

    /// Order of the group, computed without building it.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Product(a, b) => a.order() * b.order(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `C<n>`, `D<n>`, `S<n>` and products joined by `x`,
    /// case-insensitively. Whitespace is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("group spec {s:?}: {why}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        if s.chars().any(char::is_whitespace) {
            return Err(bad("whitespace is not allowed"));
        }
        let lower = s.to_ascii_lowercase();
        let mut factors = Vec::new();
        for part in lower.split('x') {
            let mut chars = part.chars();
            let family = chars.next().ok_or_else(|| bad("empty factor"))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected a family letter followed by a positive integer"));
            }
            let n: usize = digits.parse().map_err(|_| bad("integer out of range"))?;
            if n == 0 {
                return Err(bad("the parameter must be positive"));
            }
            let factor = match family {
                'c' => GroupSpec::Cyclic(n),
                'd' => GroupSpec::Dihedral(n),
                's' if n <= MAX_SYMMETRIC_DEGREE => GroupSpec::Symmetric(n),
                's' => return Err(bad("symmetric degree must be at most 7")),
                _ => return Err(bad("unknown family (expected C, D or S)")),
            };
            factors.push(factor);
        }
        let mut iter = factors.into_iter();
        let first = iter.next().ok_or_else(|| bad("empty"))?;
        Ok(iter.fold(first, |acc, next| GroupSpec::Product(Box::new(acc), Box::new(next))))
    }
}

/// A finite group stored as a Cayley table over dense element indices.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
    spec: Option<GroupSpec>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, validating every group
    /// axiom. Associativity is exhaustive up to order 48 and sampled above.
    pub fn from_table(order: usize, table: Vec<usize>, label: impl Into<String>) -> Result<Self> {
        Self::from_table_with_spec(order, table, label.into(), None)
    }

    fn from_table_with_spec(order: usize, table: Vec<usize>, label: String, spec: Option<GroupSpec>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("group order must be positive".into()));
        }
        if order > u32::MAX as usize {
            return Err(Error::InvalidArgument("group order too large".into()));
        }
        if table.len() != order * order {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let table: Vec<u32> = table
            .into_iter()
            .map(|v| {
                if v < order {
                    Ok(v as u32)
                } else {
                    Err(Error::InvalidArgument(format!("table entry {v} out of range")))
                }
            })
            .collect::<Result<_>>()?;

        // Latin square: rows and columns are permutations.
        let mut seen = vec![usize::MAX; order];
        for x in 0..order {
            for y in 0..order {
                let v = table[x * order + y] as usize;
                if seen[v] == x {
                    return Err(Error::Verification(format!("row {x} repeats element {v}")));
                }
                seen[v] = x;
            }
        }
        seen.fill(usize::MAX);
        for y in 0..order {
            for x in 0..order {
                let v = table[x * order + y] as usize;
                if seen[v] == y {
                    return Err(Error::Verification(format!("column {y} repeats element {v}")));
                }
                seen[v] = y;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x))
            .ok_or_else(|| Error::Verification("no left identity".into()))?;
        if (0..order).any(|x| table[x * order + identity] as usize != x) {
            return Err(Error::Verification("left identity is not a right identity".into()));
        }

        // In a Latin square every row contains the identity exactly once.
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .expect("latin square row contains identity");
        }

        let group = FiniteGroup {
            order,
            table,
            identity,
            inverse,
            label,
            spec,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let assoc = |x: usize, y: usize, z: usize| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !assoc(x, y, z) {
                            return Err(Error::Verification(format!("associativity fails at ({x}, {y}, {z})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..RANDOM_ASSOCIATIVITY_TRIPLES {
                let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(x, y, z) {
                    return Err(Error::Verification(format!("associativity fails at ({x}, {y}, {z})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The constructor family, when the group came from one.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    /// Index of the product `x*y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Conjugate `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Row `x` of the Cayley table.
    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[x * self.order..(x + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    /// Elements `g` with `g*x = x*g` for every `x`.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| (0..self.order).all(|x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }
}

/// The cyclic group of order `n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic order must be positive".into()));
    }
    let table = (0..n).flat_map(|x| (0..n).map(move |y| (x + y) % n)).collect();
    FiniteGroup::from_table_with_spec(n, table, format!("C{n}"), Some(GroupSpec::Cyclic(n)))
}

/// The dihedral group of order `2n`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral parameter must be positive".into()));
    }
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / n, x % n);
        for y in 0..order {
            let (c, d) = (y / n, y % n);
            // r^b s = s r^-b
            let k = if c == 1 { (n - b + d) % n } else { (b + d) % n };
            table.push(((a + c) % 2) * n + k);
        }
    }
    FiniteGroup::from_table_with_spec(order, table, format!("D{n}"), Some(GroupSpec::Dihedral(n)))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) {
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
    out
}

/// Position of a permutation in lexicographic order (Lehmer code).
pub fn permutation_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// The symmetric group on `n` letters, `1 <= n <= 7`.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "symmetric degree must be in 1..={MAX_SYMMETRIC_DEGREE}, got {n}"
        )));
    }
    let perms = permutations_lex(n);
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    let mut scratch = vec![0; n];
    for x in &perms {
        for y in &perms {
            for (i, s) in scratch.iter_mut().enumerate() {
                *s = x[y[i]];
            }
            table.push(permutation_rank(&scratch));
        }
    }
    FiniteGroup::from_table_with_spec(order, table, format!("S{n}"), Some(GroupSpec::Symmetric(n)))
}

/// Direct product with element `(a, b)` at index `a*|G2| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (g1.order, g2.order);
    let order = n1 * n2;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / n2, x % n2);
        for y in 0..order {
            let (c, d) = (y / n2, y % n2);
            table.push(g1.mul(a, c) * n2 + g2.mul(b, d));
        }
    }
    let spec = match (&g1.spec, &g2.spec) {
        (Some(a), Some(b)) => Some(GroupSpec::Product(Box::new(a.clone()), Box::new(b.clone()))),
        _ => None,
    };
    let label = format!("{}x{}", g1.label, g2.label);
    FiniteGroup::from_table_with_spec(order, table, label, spec).expect("direct product of valid groups is a group")
}

/// A subgroup, stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps `members` after checking identity, closure, inverses and Lagrange.
    pub fn new(parent: Arc<FiniteGroup>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: Vec<usize> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let n = parent.order();
        if members.iter().any(|&m| m >= n) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        let mut inside = vec![false; n];
        for &m in &members {
            inside[m] = true;
        }
        if !inside[parent.identity()] {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &members {
            if !inside[parent.inv(a)] {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                if !inside[parent.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} escapes")));
                }
            }
        }
        if !n.is_multiple_of(members.len()) {
            return Err(Error::NotASubgroup("order does not divide the group order".into()));
        }
        Ok(Subgroup { parent, members })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Index `[G:H]`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }
}

fn closure_members(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let n = group.order();
    let mut inside = vec![false; n];
    let mut queue = VecDeque::new();
    inside[group.identity()] = true;
    queue.push_back(group.identity());
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                queue.push_back(y);
            }
        }
    }
    (0..n).filter(|&x| inside[x]).collect()
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_from_generators(group: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = gens.iter().find(|&&g| g >= group.order()) {
        return Err(Error::InvalidArgument(format!("generator {bad} out of range")));
    }
    // In a finite group, closing under right multiplication by generators
    // already yields inverses, since each is a positive power.
    let members = closure_members(group, gens);
    Ok(Subgroup {
        parent: Arc::clone(group),
        members,
    })
}

/// Every subgroup of `group`, sorted by size then lexicographically.
///
/// Subgroups are generated by closing generator sets: start from the cyclic
/// subgroups and repeatedly adjoin one element until no new subgroup appears.
/// Every subgroup needs at most `log2 |G|` generators, so this reaches all of
/// them.
pub fn all_subgroups(group: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>> {
    let n = group.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        let members = closure_members(group, &[g]);
        if found.insert(members.clone()) {
            frontier.push(members);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for members in &frontier {
            let mut inside = vec![false; n];
            for &m in members {
                inside[m] = true;
            }
            let mut gens = members.clone();
            for g in (0..n).filter(|&g| !inside[g]) {
                gens.push(g);
                let joined = closure_members(group, &gens);
                gens.pop();
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut list: Vec<Vec<usize>> = found.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list
        .into_iter()
        .map(|members| Subgroup {
            parent: Arc::clone(group),
            members,
        })
        .collect())
}

/// Whether `h` is normal in `group`, checked on every conjugate.
pub fn is_normal(group: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    if h.parent.as_ref() != group {
        return Err(Error::NotASubgroup("subgroup belongs to a different group".into()));
    }
    Ok((0..group.order()).all(|g| h.members.iter().all(|&x| h.contains(group.conjugate(g, x)))))
}
