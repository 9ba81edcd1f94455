//! Finite groups given by Cayley tables, together with homomorphisms,
//! subgroups, cosets, quotients and a small isomorphism search.
//!
//! Elements are plain indices `0..order`. Element `0` is not required to be
//! the identity; the identity is located when the table is loaded.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element inside its group.
pub type Elem = usize;

/// Largest order accepted by [`FiniteGroup::from_table`] unless a different
/// cap is requested.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// Largest order handled by [`are_isomorphic`].
pub const ISOMORPHISM_ORDER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("the multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {len} entries, expected {expected}")]
    BadDimensions { row: usize, len: usize, expected: usize },
    #[error("declared order {declared} does not match the table size {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("table entry {x}*{y} = {value} is out of range")]
    NotClosed { x: Elem, y: Elem, value: Elem },
    #[error("no two-sided identity element exists")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    MissingInverse { element: Elem },
    #[error("multiplication is not associative on ({x}, {y}, {z})")]
    NotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("names list has {len} entries for a group of order {order}")]
    NamesLength { len: usize, order: usize },
    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: Elem, order: usize },
    #[error("map has {len} entries, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("map does not preserve the identity")]
    IdentityNotPreserved,
    #[error("map is not multiplicative at ({x}, {y})")]
    NotHomomorphism { x: Elem, y: Elem },
    #[error("generator images are inconsistent at element {element}")]
    InconsistentGenerators { element: Elem },
    #[error("subgroup order {sub} does not divide group order {order}")]
    NotDivisible { sub: usize, order: usize },
    #[error("subgroup is not normal: conjugating {h} by {g} leaves it")]
    NotNormal { g: Elem, h: Elem },
    #[error("element set is not a subgroup")]
    NotASubgroup,
}

/// A finite group stored as its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
    names: Option<Vec<String>>,
}

/// JSON shape of a group: `{"order": n, "mul": [[...]], "names": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Loads a group from a row-major Cayley table, checking every group
    /// axiom exhaustively. Orders above [`DEFAULT_ORDER_CAP`] are refused.
    pub fn from_table(rows: Vec<Vec<Elem>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        Self::from_table_with_cap(rows, names, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_with_cap(
        rows: Vec<Vec<Elem>>,
        names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        if n > cap {
            return Err(GroupError::OrderCapExceeded { order: n, cap });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::BadDimensions {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed {
                        x: row,
                        y: col,
                        value: v,
                    });
                }
            }
            mul.extend_from_slice(r);
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(GroupError::NamesLength {
                    len: names.len(),
                    order: n,
                });
            }
        }
        let at = |x: Elem, y: Elem| mul[x * n + y];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(GroupError::MissingInverse { element: x })?;
            inv.push(y);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            mul,
            identity,
            inv,
            names,
        })
    }

    pub fn from_json(json: GroupJson) -> Result<Self, GroupError> {
        if json.order != json.mul.len() {
            return Err(GroupError::OrderMismatch {
                declared: json.order,
                actual: json.mul.len(),
            });
        }
        Self::from_table(json.mul, json.names)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            mul: self.mul.chunks(self.order).map(<[Elem]>::to_vec).collect(),
            names: self.names.clone(),
        }
    }

    /// Builds a table from a closed multiplication function. Only used for
    /// constructions that are correct by design, so the axioms are not
    /// re-checked beyond what `from_table` does.
    fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> Elem, names: Option<Vec<String>>) -> Self {
        let rows = (0..order).map(|x| (0..order).map(|y| f(x, y)).collect()).collect();
        Self::from_table_with_cap(rows, names, usize::MAX).expect("constructed table is a group")
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, |_, _| 0, Some(vec!["e".into()]))
    }

    /// The cyclic group `Z_n`; element `i` is `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |x, y| (x + y) % n, None)
    }

    /// The dihedral group of order `2n`. Element `i < n` is the rotation
    /// `r^i`, element `n + i` is the reflection `s r^i`. The reflections
    /// `s` (index `n`) and `s r` (index `n + 1`) generate the group and
    /// their product `r` has order `n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        // s r^i s r^j = r^{j-i}, r^i s r^j = s r^{j-i}
        let f = move |x: Elem, y: Elem| {
            let (xs, xi) = (x >= n, x % n);
            let (ys, yj) = (y >= n, y % n);
            match (xs, ys) {
                (false, false) => (xi + yj) % n,
                (false, true) => n + (yj + n - xi) % n,
                (true, false) => n + (xi + yj) % n,
                (true, true) => (yj + n - xi) % n,
            }
        };
        Self::from_fn(2 * n, f, None)
    }

    /// Direct product; the pair `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order;
        Self::from_fn(g.order * m, |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m), None)
    }

    /// Closure of a set of permutations of `0..degree`. Returns the group
    /// and the permutation realising each element index; the identity
    /// permutation is always element `0`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> (Self, Vec<Vec<usize>>) {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id];
        let mut index = std::collections::HashMap::new();
        index.insert(elems[0].clone(), 0usize);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        // x*y acts as "first x, then y" on points.
        let compose = |x: &Vec<usize>, y: &Vec<usize>| -> Vec<usize> { (0..degree).map(|k| y[x[k]]).collect() };
        let n = elems.len();
        let rows = (0..n)
            .map(|x| (0..n).map(|y| index[&compose(&elems[x], &elems[y])]).collect())
            .collect();
        let group = Self::from_table_with_cap(rows, None, usize::MAX).expect("permutation closure is a group");
        (group, elems)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_identity(&self, x: Elem) -> bool {
        x == self.identity
    }

    pub fn product(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn check_elem(&self, x: Elem) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }
}

/// A subgroup, stored as a sorted element list plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted(g.order, vec![g.identity])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_sorted(g.order, g.elements().collect())
    }

    fn from_sorted(parent_order: usize, elements: Vec<Elem>) -> Self {
        let mut member = vec![false; parent_order];
        for &x in &elements {
            member[x] = true;
        }
        Self {
            parent_order,
            elements,
            member,
        }
    }

    /// Accepts an element set only if it is closed under products and
    /// inverses and contains the identity.
    pub fn from_elements(g: &FiniteGroup, elements: impl IntoIterator<Item = Elem>) -> Result<Self, GroupError> {
        let mut els: Vec<Elem> = elements.into_iter().collect();
        for &x in &els {
            g.check_elem(x)?;
        }
        els.sort_unstable();
        els.dedup();
        let s = Self::from_sorted(g.order, els);
        let closed = s.contains(g.identity)
            && s.elements
                .iter()
                .all(|&x| s.contains(g.inv(x)) && s.elements.iter().all(|&y| s.contains(g.mul(x, y))));
        if closed {
            Ok(s)
        } else {
            Err(GroupError::NotASubgroup)
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let els = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_sorted(self.parent_order, els)
    }
}

/// The smallest subgroup containing `gens`.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut member = vec![false; g.order];
    member[g.identity] = true;
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                queue.push_back(y);
            }
        }
    }
    let elements = (0..g.order).filter(|&x| member[x]).collect();
    Subgroup {
        parent_order: g.order,
        elements,
        member,
    }
}

/// `[G : H]`, asserting Lagrange divisibility.
pub fn index(g: &FiniteGroup, h: &Subgroup) -> Result<usize, GroupError> {
    if h.order() == 0 || !g.order.is_multiple_of(h.order()) {
        return Err(GroupError::NotDivisible {
            sub: h.order(),
            order: g.order,
        });
    }
    Ok(g.order / h.order())
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    normality_witness(g, h).is_none()
}

fn normality_witness(g: &FiniteGroup, h: &Subgroup) -> Option<(Elem, Elem)> {
    for x in g.elements() {
        for &y in h.elements() {
            if !h.contains(g.conjugate(x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Left cosets `xH`, ordered by their smallest element, and for every
/// element the index of its coset.
pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; g.order];
    let mut cosets = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<Elem> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        for &y in &c {
            coset_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    (cosets, coset_of)
}

/// `G / N` with its projection map. Coset `i` of the quotient is the
/// `i`-th coset in the order of [`left_cosets`], so the identity coset is
/// the one containing the smallest element of `N`.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>), GroupError> {
    if let Some((x, y)) = normality_witness(g, n) {
        return Err(GroupError::NotNormal { g: x, h: y });
    }
    let (cosets, coset_of) = left_cosets(g, n);
    let k = cosets.len();
    let q = FiniteGroup::from_fn(k, |a, b| coset_of[g.mul(cosets[a][0], cosets[b][0])], None);
    Ok((q, coset_of))
}

/// Extends generator images to a map on `⟨gens⟩` by breadth-first search,
/// failing on the first inconsistency. Returns `None` entries outside the
/// generated subgroup.
fn extend_on_generated(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[Elem],
    imgs: &[Elem],
) -> Result<Vec<Option<Elem>>, GroupError> {
    let mut map = vec![None; dom.order];
    map[dom.identity] = Some(cod.identity);
    let mut queue = VecDeque::from([dom.identity]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = dom.mul(x, s);
            let fy = cod.mul(fx, t);
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(v) if v != fy => return Err(GroupError::InconsistentGenerators { element: y }),
                Some(_) => {}
            }
        }
    }
    Ok(map)
}

/// A homomorphism between two finite groups. Injectivity is not part of
/// the type; diagram validation checks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    dom: Arc<FiniteGroup>,
    cod: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self, GroupError> {
        if map.len() != dom.order {
            return Err(GroupError::MapLength {
                len: map.len(),
                expected: dom.order,
            });
        }
        for &v in &map {
            cod.check_elem(v)?;
        }
        if map[dom.identity] != cod.identity {
            return Err(GroupError::IdentityNotPreserved);
        }
        for x in dom.elements() {
            for y in dom.elements() {
                if map[dom.mul(x, y)] != cod.mul(map[x], map[y]) {
                    return Err(GroupError::NotHomomorphism { x, y });
                }
            }
        }
        Ok(Self { dom, cod, map })
    }

    /// The homomorphism determined by the images of a generating set.
    pub fn from_generator_images(
        dom: Arc<FiniteGroup>,
        cod: Arc<FiniteGroup>,
        gens: &[Elem],
        imgs: &[Elem],
    ) -> Result<Self, GroupError> {
        for &g in gens {
            dom.check_elem(g)?;
        }
        for &t in imgs {
            cod.check_elem(t)?;
        }
        let partial = extend_on_generated(&dom, &cod, gens, imgs)?;
        let map = partial
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or(GroupError::InconsistentGenerators { element: x }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dom, cod, map)
    }

    pub fn identity_on(g: Arc<FiniteGroup>) -> Self {
        let map = g.elements().collect();
        Self {
            dom: g.clone(),
            cod: g,
            map,
        }
    }

    pub fn dom(&self) -> &Arc<FiniteGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroup> {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// First pair of distinct elements with equal images, if any.
    pub fn collision(&self) -> Option<(Elem, Elem)> {
        let mut seen = vec![usize::MAX; self.cod.order];
        for x in self.dom.elements() {
            let y = self.map[x];
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    pub fn image(&self) -> Subgroup {
        let mut els: Vec<Elem> = self.map.clone();
        els.sort_unstable();
        els.dedup();
        Subgroup::from_sorted(self.cod.order, els)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        assert_eq!(self.cod.order, other.dom.order, "composition of incompatible maps");
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Homomorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map,
        }
    }
}

/// A small generating set, chosen greedily by descending element order.
pub fn generating_set(g: &FiniteGroup) -> Vec<Elem> {
    let mut by_order: Vec<Elem> = g.elements().collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut current = subgroup_generated(g, &gens);
    for x in by_order {
        if current.order() == g.order {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = subgroup_generated(g, &gens);
        }
    }
    gens
}

/// Searches for an isomorphism `g1 → g2`, returned as an element map.
pub fn are_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Option<Vec<Elem>>, GroupError> {
    for g in [g1, g2] {
        if g.order > ISOMORPHISM_ORDER_CAP {
            return Err(GroupError::OrderCapExceeded {
                order: g.order,
                cap: ISOMORPHISM_ORDER_CAP,
            });
        }
    }
    if g1.order != g2.order {
        return Ok(None);
    }
    let orders1: Vec<usize> = g1.elements().map(|x| g1.element_order(x)).collect();
    let orders2: Vec<usize> = g2.elements().map(|x| g2.element_order(x)).collect();
    let (mut s1, mut s2) = (orders1.clone(), orders2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let gens = generating_set(g1);
    let mut imgs = Vec::with_capacity(gens.len());
    Ok(iso_backtrack(g1, g2, &gens, &orders1, &orders2, &mut imgs))
}

fn iso_backtrack(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[Elem],
    orders1: &[usize],
    orders2: &[usize],
    imgs: &mut Vec<Elem>,
) -> Option<Vec<Elem>> {
    let k = imgs.len();
    if k > 0 {
        let partial = extend_on_generated(g1, g2, &gens[..k], imgs).ok()?;
        let mut hit = vec![false; g2.order];
        for v in partial.iter().flatten() {
            if std::mem::replace(&mut hit[*v], true) {
                return None;
            }
        }
        if k == gens.len() {
            return partial.into_iter().collect();
        }
    } else if gens.is_empty() {
        return Some(vec![g2.identity]);
    }
    let target = gens[k];
    for cand in g2.elements() {
        if orders2[cand] != orders1[target] {
            continue;
        }
        imgs.push(cand);
        if let Some(m) = iso_backtrack(g1, g2, gens, orders1, orders2, imgs) {
            return Some(m);
        }
        imgs.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> FiniteGroup {
        FiniteGroup::dihedral(4)
    }

    #[test]
    fn z2_loads() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn monoid_table_has_no_inverse() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, GroupError::MissingInverse { element: 1 });
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z2 with the identity stored at index 1.
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.identity(), 1);
    }

    #[test]
    fn out_of_range_entry_is_not_closed() {
        let err = FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None).unwrap_err();
        assert!(matches!(err, GroupError::NotClosed { x: 0, y: 1, value: 2 }));
    }

    #[test]
    fn ragged_table_is_rejected() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).unwrap_err();
        assert!(matches!(err, GroupError::BadDimensions { row: 1, .. }));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 that is not a group (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(rows, None),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn d4_rotation_inverse_is_cube() {
        // Brute force: D4 from its two generating reflections as permutations of the square.
        let s = vec![0, 3, 2, 1];
        let t = vec![1, 0, 3, 2];
        let (g, perms) = FiniteGroup::from_permutations(4, &[s.clone(), t.clone()]);
        assert_eq!(g.order(), 8);
        let si = perms.iter().position(|p| *p == s).unwrap();
        let ti = perms.iter().position(|p| *p == t).unwrap();
        let r = g.mul(si, ti);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.inv(r), g.pow(r, 3));
        assert!(are_isomorphic(&g, &d4()).unwrap().is_some());
    }

    #[test]
    fn dihedral_generators() {
        for n in 1..=8 {
            let g = FiniteGroup::dihedral(n);
            assert_eq!(g.order(), 2 * n);
            let (a, b) = (n, n + 1 - usize::from(n == 1));
            assert_eq!(g.element_order(a), 2);
            assert_eq!(subgroup_generated(&g, &[a, b]).order(), 2 * n);
            if n > 1 {
                assert_eq!(g.element_order(g.mul(a, b)), n);
            }
        }
    }

    #[test]
    fn generated_subgroups() {
        let g = d4();
        assert_eq!(subgroup_generated(&g, &[]).elements(), &[g.identity()]);
        assert_eq!(subgroup_generated(&g, &[4]).order(), 2);
        // s and s r^2 are reflections across perpendicular axes.
        let h = subgroup_generated(&g, &[4, 6]);
        assert_eq!(h.order(), 4);
        assert_eq!(index(&g, &h).unwrap(), 2);
    }

    #[test]
    fn index_examples() {
        let g = d4();
        assert_eq!(index(&g, &Subgroup::whole(&g)).unwrap(), 1);
        assert_eq!(index(&g, &subgroup_generated(&g, &[4])).unwrap(), 4);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(index(&z2, &Subgroup::trivial(&z2)).unwrap(), 2);
    }

    #[test]
    fn normality_examples() {
        let g = d4();
        let rot = subgroup_generated(&g, &[1]);
        assert!(is_normal(&g, &rot));
        assert!(!is_normal(&g, &subgroup_generated(&g, &[4])));
        assert!(is_normal(&g, &Subgroup::trivial(&g)));
    }

    #[test]
    fn quotient_examples() {
        let g = d4();
        let (q, _) = quotient_group(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.order(), 1);
        let center = subgroup_generated(&g, &[2]);
        let (q, proj) = quotient_group(&g, &center).unwrap();
        assert_eq!(q.order(), 4);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(proj[g.mul(x, y)], q.mul(proj[x], proj[y]));
            }
        }
        let z4 = FiniteGroup::cyclic(4);
        let (q, _) = quotient_group(&z4, &subgroup_generated(&z4, &[2])).unwrap();
        assert!(are_isomorphic(&q, &FiniteGroup::cyclic(2)).unwrap().is_some());
        assert!(matches!(
            quotient_group(&g, &subgroup_generated(&g, &[4])),
            Err(GroupError::NotNormal { .. })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(are_isomorphic(&z4, &v4).unwrap().is_none());
        assert!(are_isomorphic(&FiniteGroup::dihedral(2), &v4).unwrap().is_some());
        let g = d4();
        let m = are_isomorphic(&g, &g).unwrap().unwrap();
        assert!(g
            .elements()
            .all(|x| g.elements().all(|y| m[g.mul(x, y)] == g.mul(m[x], m[y]))));
        let big = FiniteGroup::cyclic(65);
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(GroupError::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let text = r#"{"order":2,"mul":[[0,1],[1,0]],"names":["e","a"]}"#;
        let g = FiniteGroup::from_json(serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&g.to_json()).unwrap(), text);
    }

    #[test]
    fn homomorphism_checks() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let h = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(h.collision(), Some((0, 2)));
        assert!(matches!(
            Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 1, 0]),
            Err(GroupError::NotHomomorphism { .. })
        ));
        let inc = Homomorphism::from_generator_images(z2, z4, &[1], &[2]).unwrap();
        assert_eq!(inc.map(), &[0, 2]);
        assert!(inc.is_injective());
    }
}
