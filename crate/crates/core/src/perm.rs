//! Finite permutation groups given by generators.
//!
//! Conventions: points are 0-based internally and 1-based in cycle notation.
//! The group product `g·h` is composition of functions, `h` applied first,
//! so that `g ↦ permutation matrix` is a homomorphism for left modules. A
//! cycle string such as `"(1,2)(2,3)"` is read left to right: `(1,2)` acts
//! first.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the size of a generated group.
pub const MAX_GROUP_ORDER: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images; `None` if not a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm { images })
    }

    /// Parse 1-based cycle notation on `degree` points. Cycles are applied
    /// left to right; `"()"` and `""` are the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Perm> {
        let mut acc = Perm::identity(degree);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in cycle {s:?}")));
            };
            let Some(end) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {s:?}")));
            };
            let inner = &body[..end];
            rest = &body[end + 1..];
            if inner.is_empty() {
                continue;
            }
            let pts: Vec<usize> = inner
                .split(',')
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            let mut cycle = Perm::identity(degree);
            let mut seen = HashSet::new();
            for (i, &pt) in pts.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::Parse(format!(
                        "point {pt} out of range 1..={degree} in {s:?}"
                    )));
                }
                if !seen.insert(pt) {
                    return Err(Error::Parse(format!("repeated point {pt} in {s:?}")));
                }
                let next = pts[(i + 1) % pts.len()];
                cycle.images[pt - 1] = (next - 1) as u32;
            }
            // apply acc first, then this cycle
            acc = cycle.compose(&acc);
        }
        Ok(acc)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut l = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }
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

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                write!(f, "{}", x + 1)?;
                x = self.image(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON group description: `{"degree": 5, "generators": ["(1,2,3,4,5)", "(1,2,3)"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// A finite permutation group with its elements enumerated in a fixed order.
pub struct GroupTable {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generators: Vec<usize>,
    /// element = generator[slot] · parent, for every non-identity element
    words: Vec<Option<(usize, usize)>>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    mult: OnceLock<Vec<u32>>,
}

pub type Group = Arc<GroupTable>;

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupTable(order {}, degree {}, gens {:?})",
            self.order(),
            self.degree,
            self.generator_perms()
        )
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.elements == other.elements
            && self.generators == other.generators
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Enumerate `⟨gens⟩` breadth first. Each BFS level is sorted
    /// lexicographically by image array, so the element order is a pure
    /// function of the generator list.
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Group> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut words: Vec<Option<(usize, usize)>> = vec![None];
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut fresh: Vec<(Perm, usize, usize)> = Vec::new();
            let mut fresh_set: HashSet<Perm> = HashSet::new();
            for &x in &level {
                for (slot, s) in gens.iter().enumerate() {
                    let y = s.compose(&elements[x]);
                    if !index.contains_key(&y) && fresh_set.insert(y.clone()) {
                        fresh.push((y, slot, x));
                    }
                }
            }
            fresh.sort_by(|a, b| a.0.cmp(&b.0));
            level = Vec::with_capacity(fresh.len());
            for (y, slot, parent) in fresh {
                let i = elements.len();
                if i >= MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                }
                index.insert(y.clone(), i);
                elements.push(y);
                words.push(Some((slot, parent)));
                level.push(i);
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        let inverses = elements.iter().map(|g| index[&g.inverse()]).collect();
        let orders = elements.iter().map(Perm::order).collect();
        Ok(Arc::new(GroupTable {
            degree,
            elements,
            index,
            generators,
            words,
            inverses,
            orders,
            mult: OnceLock::new(),
        }))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Group> {
        let gens = spec
            .generators
            .iter()
            .map(|s| Perm::parse(s, spec.degree))
            .collect::<Result<Vec<_>>>()?;
        GroupTable::generate(spec.degree, &gens)
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self
                .generator_perms()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Element indices of the generators, in generator order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// `(generator slot, parent)` with `element = gen · parent`; `None` for
    /// the identity. Parents always precede their children.
    pub fn word_step(&self, i: usize) -> Option<(usize, usize)> {
        self.words[i]
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    #[inline]
    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i]
    }

    fn table(&self) -> &[u32] {
        self.mult.get_or_init(|| {
            let n = self.order();
            let mut t = vec![0u32; n * n];
            for (a, ga) in self.elements.iter().enumerate() {
                for (b, gb) in self.elements.iter().enumerate() {
                    t[a * n + b] = self.index[&ga.compose(gb)] as u32;
                }
            }
            t
        })
    }

    /// Index of `g_a · g_b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table()[a * self.order() + b] as usize
    }

    /// `s · x · s⁻¹`
    pub fn conjugate(&self, x: usize, s: usize) -> usize {
        self.mul(self.mul(s, x), self.inverse(s))
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_power_of(self.order(), p as usize)
    }

    /// Largest power of `p` dividing `|G|`.
    pub fn p_part(&self, p: u32) -> usize {
        let mut n = self.order();
        let mut part = 1;
        while n % p as usize == 0 {
            n /= p as usize;
            part *= p as usize;
        }
        part
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A conjugacy class with its least-index representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub p_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<ConjugacyClass>,
    pub p_regular_count: usize,
    /// class index of every element
    pub class_of: Vec<usize>,
}

/// Conjugacy classes by orbit closure under conjugation by the generators.
pub fn conjugacy_data(g: &GroupTable, p: u32) -> ConjugacyData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &s in g.generators() {
                let y = g.conjugate(x, s);
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: start,
            p_regular: g.element_order(start) % p as usize != 0,
            members,
        });
    }
    let p_regular_count = classes.iter().filter(|c| c.p_regular).count();
    ConjugacyData {
        classes,
        p_regular_count,
        class_of,
    }
}

/// A subgroup, as a sorted set of element indices of its parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.order(),
            self.parent.order()
        )
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent && self.members == other.members
    }
}

impl Subgroup {
    /// Closure of a set of elements.
    pub fn generated_by(parent: &Group, gens: &[usize]) -> Subgroup {
        let mut members = vec![0usize];
        let mut seen = HashSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = parent.mul(s, x);
                if seen.insert(y) {
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            parent: parent.clone(),
            members,
        }
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: (0..parent.order()).collect(),
        }
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: vec![0],
        }
    }

    /// Validate an explicit member set.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let mut m: Vec<usize> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) || m.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotSubgroup("member set lacks the identity".into()));
        }
        let set: HashSet<usize> = m.iter().copied().collect();
        for &a in &m {
            for &b in &m {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotSubgroup("member set is not closed".into()));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            members: m,
        })
    }

    /// Locate another group of the same degree inside `parent`.
    pub fn embed(parent: &Group, h: &GroupTable) -> Result<Subgroup> {
        if h.degree() != parent.degree() {
            return Err(Error::NotSubgroup(format!(
                "degree {} differs from parent degree {}",
                h.degree(),
                parent.degree()
            )));
        }
        let members = h
            .elements()
            .iter()
            .map(|g| {
                parent
                    .index_of(g)
                    .ok_or_else(|| Error::NotSubgroup(format!("{g} is not in the parent group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subgroup::from_members(parent, &members)
    }

    pub fn parent(&self) -> &Group {
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

    pub fn is_normal(&self) -> bool {
        self.parent.generators().iter().all(|&s| {
            self.members
                .iter()
                .all(|&x| self.contains(self.parent.conjugate(x, s)))
        })
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Least-index element generating the whole subgroup, if cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.members
            .iter()
            .copied()
            .find(|&x| self.parent.element_order(x) == self.order())
    }

    pub fn conjugate_by(&self, s: usize) -> Subgroup {
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&x| self.parent.conjugate(x, s))
            .collect();
        members.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            members,
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// A small generating set: greedily add members outside the current
    /// closure, in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = Subgroup::trivial(&self.parent);
        for &x in &self.members {
            if !closure.contains(x) {
                gens.push(x);
                closure = Subgroup::generated_by(&self.parent, &gens);
                if closure.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// This subgroup as a group in its own right (same degree).
    pub fn to_group(&self) -> Group {
        let gens: Vec<Perm> = self
            .generating_set()
            .into_iter()
            .map(|i| self.parent.element(i).clone())
            .collect();
        GroupTable::generate(self.parent.degree(), &gens).expect("subgroup of a valid group")
    }
}

/// A Sylow p-subgroup, grown greedily: keep adjoining p-elements while the
/// result stays a p-group. A p-subgroup that no single element extends is
/// maximal, hence Sylow.
pub fn sylow_subgroup(g: &Group, p: u32) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    let mut current = Subgroup::trivial(g);
    let target = g.p_part(p);
    loop {
        if current.order() == target {
            return current;
        }
        let mut grown = false;
        for x in 0..g.order() {
            if current.contains(x) || !is_power_of(g.element_order(x), p as usize) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let cand = Subgroup::generated_by(g, &trial);
            if is_power_of(cand.order(), p as usize) {
                gens = trial;
                current = cand;
                grown = true;
                break;
            }
        }
        if !grown {
            return current;
        }
    }
}

/// `O_p(G)`: the intersection of all conjugates of a Sylow p-subgroup.
pub fn normal_p_core(g: &Group, p: u32) -> Subgroup {
    let sylow = sylow_subgroup(g, p);
    let mut core = sylow.clone();
    for s in 0..g.order() {
        if core.order() == 1 {
            break;
        }
        core = core.intersect(&sylow.conjugate_by(s));
    }
    core
}

/// The factor group `G/N` acting on the cosets, with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// `projection[g]` is the quotient element index of `gN`.
    pub projection: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Cosets {
    /// Least element index of each left coset `gH`, in increasing order.
    pub transversal: Vec<usize>,
    /// Coset index of every element.
    pub coset_of: Vec<usize>,
    pub quotient: Option<Quotient>,
}

/// Left cosets of `h` in its parent, and the quotient when `h` is normal.
/// The quotient's generators are the images of the parent's generators, slot
/// for slot, so inflation can reuse generator matrices directly.
pub fn cosets_and_quotient(g: &Group, h: &Subgroup) -> Result<Cosets> {
    if **h.parent() != **g {
        return Err(Error::NotSubgroup(
            "subgroup belongs to a different group".into(),
        ));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut transversal = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = transversal.len();
        transversal.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let quotient = if h.is_normal() {
        let k = transversal.len();
        let action = |x: usize| -> Perm {
            Perm::from_images(
                transversal
                    .iter()
                    .map(|&r| coset_of[g.mul(x, r)] as u32)
                    .collect(),
            )
            .expect("left multiplication permutes cosets")
        };
        let gens: Vec<Perm> = g.generators().iter().map(|&s| action(s)).collect();
        let group = GroupTable::generate(k, &gens)?;
        let projection = (0..n)
            .map(|x| {
                group
                    .index_of(&action(x))
                    .expect("image lies in the quotient")
            })
            .collect();
        Some(Quotient { group, projection })
    } else {
        None
    };
    Ok(Cosets {
        transversal,
        coset_of,
        quotient,
    })
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["C1", "C2", "C3", "C4", "C5", "V4", "A4", "A5", "S3", "S4"];

/// Small named groups. A4 acts on five points as the stabilizer of 5, so it
/// sits inside A5 without an explicit embedding.
pub fn builtin(name: &str) -> Result<Group> {
    let (degree, gens): (usize, &[&str]) = match name {
        "C1" => (1, &[]),
        "C2" => (2, &["(1,2)"]),
        "C3" => (3, &["(1,2,3)"]),
        "C4" => (4, &["(1,2,3,4)"]),
        "C5" => (5, &["(1,2,3,4,5)"]),
        "V4" => (4, &["(1,2)(3,4)", "(1,3)(2,4)"]),
        "A4" => (5, &["(1,2,3)", "(1,2)(3,4)"]),
        "A5" => (5, &["(1,2,3,4,5)", "(1,2,3)"]),
        "S3" => (3, &["(1,2,3)", "(1,2)"]),
        "S4" => (4, &["(1,2,3,4)", "(1,2)"]),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    GroupTable::from_spec(&GroupSpec {
        degree,
        generators: gens.iter().map(|s| s.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_display() {
        let p = Perm::parse("(1,2)(2,3)", 3).unwrap();
        // 1 -> 2 -> 3, 2 -> 1, 3 -> 2
        assert_eq!(p.images(), &[2, 0, 1]);
        assert_eq!(p.to_string(), "(1,3,2)");
        assert_eq!(
            Perm::parse(" ( 1 , 2 , 3 ) ", 5).unwrap().to_string(),
            "(1,2,3)"
        );
        assert!(Perm::parse("()", 4).unwrap().is_identity());
        assert!(Perm::parse("(1,6)", 5).is_err());
        assert!(Perm::parse("(1,1)", 5).is_err());
        assert!(Perm::parse("1,2", 5).is_err());
    }

    #[test]
    fn klein_four() {
        let v4 = builtin("V4").unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.degree(), 4);
        assert!((1..4).all(|i| v4.element_order(i) == 2));
    }

    #[test]
    fn trivial_generation() {
        let g = GroupTable::generate(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        let d = conjugacy_data(&g, 2);
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.p_regular_count, 1);
    }

    #[test]
    fn orders_of_builtins() {
        for (name, n) in [
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C5", 5),
            ("A4", 12),
            ("A5", 60),
            ("S3", 6),
            ("S4", 24),
        ] {
            assert_eq!(builtin(name).unwrap().order(), n, "{name}");
        }
        assert_eq!(builtin("A5").unwrap().degree(), 5);
        assert_eq!(builtin("A6").unwrap_err(), Error::UnknownGroup("A6".into()));
    }

    #[test]
    fn degree_mismatch_and_size_guard() {
        let a = Perm::parse("(1,2)", 2).unwrap();
        let b = Perm::parse("(1,2,3)", 3).unwrap();
        assert!(matches!(
            GroupTable::generate(3, &[a, b]),
            Err(Error::DegreeMismatch(_))
        ));
        // S8 has 40320 elements
        let big = GroupSpec {
            degree: 8,
            generators: vec!["(1,2,3,4,5,6,7,8)".into(), "(1,2)".into()],
        };
        assert_eq!(
            GroupTable::from_spec(&big).unwrap_err(),
            Error::GroupTooLarge(MAX_GROUP_ORDER)
        );
    }

    #[test]
    fn deterministic_order() {
        let a = builtin("A5").unwrap();
        let b = builtin("A5").unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.elements()[0].is_identity());
        for i in 0..a.order() {
            assert_eq!(a.mul(0, i), i);
        }
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = builtin("A5").unwrap();
        for i in 1..g.order() {
            let (slot, parent) = g.word_step(i).unwrap();
            assert!(parent < i);
            assert_eq!(g.mul(g.generators()[slot], parent), i);
        }
    }

    #[test]
    fn a5_classes() {
        let g = builtin("A5").unwrap();
        let d = conjugacy_data(&g, 2);
        assert_eq!(d.classes.len(), 5);
        assert_eq!(d.p_regular_count, 4);
        let mut sizes: Vec<usize> = d.classes.iter().map(|c| c.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn a4_classes_brute_force() {
        let g = builtin("A4").unwrap();
        let d = conjugacy_data(&g, 2);
        // oracle: conjugate by every element, not just generators
        let mut brute: Vec<Vec<usize>> = Vec::new();
        for x in 0..g.order() {
            let mut cls: Vec<usize> = (0..g.order()).map(|s| g.conjugate(x, s)).collect();
            cls.sort();
            cls.dedup();
            if !brute.contains(&cls) {
                brute.push(cls);
            }
        }
        let mine: Vec<Vec<usize>> = d.classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(mine, brute);
        assert_eq!(d.classes.len(), 4);
        assert_eq!(d.p_regular_count, 3);
        let names: Vec<String> = d
            .classes
            .iter()
            .map(|c| g.element(c.representative).to_string())
            .collect();
        assert!(names.contains(&"()".to_string()));
        assert!(d
            .classes
            .iter()
            .any(|c| c.members.len() == 3 && !c.p_regular));
    }

    #[test]
    fn class_sizes_are_centralizer_indices() {
        for name in ["A4", "A5", "S4", "V4", "S3"] {
            let g = builtin(name).unwrap();
            let d = conjugacy_data(&g, 2);
            let total: usize = d.classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, g.order());
            for c in &d.classes {
                let x = c.representative;
                let centralizer = (0..g.order())
                    .filter(|&s| g.mul(s, x) == g.mul(x, s))
                    .count();
                assert_eq!(c.members.len(), g.order() / centralizer);
            }
        }
    }

    #[test]
    fn p_cores() {
        let a4 = builtin("A4").unwrap();
        let core = normal_p_core(&a4, 2);
        assert_eq!(core.order(), 4);
        assert!(core.is_normal());
        let v4_elems: Vec<String> = core
            .members()
            .iter()
            .map(|&i| a4.element(i).to_string())
            .collect();
        assert!(v4_elems.contains(&"(1,2)(3,4)".to_string()));

        let a5 = builtin("A5").unwrap();
        // oracle: intersect every conjugate of every Sylow 2-subgroup
        let sylow = sylow_subgroup(&a5, 2);
        assert_eq!(sylow.order(), 4);
        let mut inter = sylow.clone();
        for s in 0..a5.order() {
            inter = inter.intersect(&sylow.conjugate_by(s));
        }
        assert_eq!(inter.order(), 1);
        assert_eq!(normal_p_core(&a5, 2).order(), 1);

        let v4 = builtin("V4").unwrap();
        assert_eq!(normal_p_core(&v4, 2).order(), 4);
        let c5 = builtin("C5").unwrap();
        assert_eq!(normal_p_core(&c5, 5).order(), 5);
    }

    #[test]
    fn quotient_of_a4_by_v4() {
        let a4 = builtin("A4").unwrap();
        let v4 = normal_p_core(&a4, 2);
        let cos = cosets_and_quotient(&a4, &v4).unwrap();
        assert_eq!(cos.transversal.len(), 3);
        let q = cos.quotient.unwrap();
        assert_eq!(q.group.order(), 3);
        assert!(q.group.is_abelian());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = rng.gen_range(0..12);
            let b = rng.gen_range(0..12);
            assert_eq!(
                q.projection[a4.mul(a, b)],
                q.group.mul(q.projection[a], q.projection[b])
            );
        }
    }

    #[test]
    fn trivial_and_non_normal_quotients() {
        let a5 = builtin("A5").unwrap();
        let cos = cosets_and_quotient(&a5, &Subgroup::whole(&a5)).unwrap();
        assert_eq!(cos.transversal, vec![0]);
        assert_eq!(cos.quotient.unwrap().group.order(), 1);

        let a4 = builtin("A4").unwrap();
        let h = Subgroup::embed(&a5, &a4).unwrap();
        let cos = cosets_and_quotient(&a5, &h).unwrap();
        assert_eq!(cos.transversal.len(), 5);
        assert!(cos.quotient.is_none());
        // transversal is the least element of each coset
        for (c, &r) in cos.transversal.iter().enumerate() {
            assert!((0..r).all(|x| cos.coset_of[x] != c));
        }
    }

    #[test]
    fn embed_rejects_foreign_groups() {
        let a4 = builtin("A4").unwrap();
        let s4 = builtin("S4").unwrap();
        assert!(matches!(
            Subgroup::embed(&a4, &s4),
            Err(Error::NotSubgroup(_))
        ));
        let c2 = GroupTable::generate(5, &[Perm::parse("(1,2)", 5).unwrap()]).unwrap();
        assert!(matches!(
            Subgroup::embed(&a4, &c2),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn to_group_roundtrip() {
        let a5 = builtin("A5").unwrap();
        let s = sylow_subgroup(&a5, 2);
        let g = s.to_group();
        assert_eq!(g.order(), 4);
        assert_eq!(Subgroup::embed(&a5, &g).unwrap(), s);
    }
}
