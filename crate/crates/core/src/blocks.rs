//! Blocks of kG from Cartan linkage, and idempotents of cyclic p′-subgroups
//! from the character formula.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::Subspace;
use crate::module::{sub_quotient, AlgebraElem, GroupAlgebra, Module};
use crate::perm::{conjugacy_data, Subgroup};
use crate::structure::Decomposition;

/// Brute-force search over the centre runs only up to this many elements.
pub const CENTER_SEARCH_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct BlockPartition {
    /// simple indices in each block, blocks ordered by least simple index
    pub parts: Vec<Vec<usize>>,
    pub idempotents: Vec<AlgebraElem>,
    /// the block holding the trivial module
    pub principal: usize,
    /// `Some(true)` when the centre search found no smaller central
    /// idempotent, `None` when the centre was too large to search
    pub primitive: Vec<Option<bool>>,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn block_of_simple(&self, s: usize) -> usize {
        self.parts
            .iter()
            .position(|p| p.contains(&s))
            .expect("parts cover the simples")
    }
}

fn components(c: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut part = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < part.len() {
            let a = part[i];
            for b in 0..n {
                if !seen[b] && (c[a][b] != 0 || c[b][a] != 0) {
                    seen[b] = true;
                    part.push(b);
                }
            }
            i += 1;
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Every central idempotent of kG as a combination of class sums, by
/// enumeration. `None` when there are too many combinations.
pub fn central_idempotents(alg: &GroupAlgebra) -> Option<Vec<AlgebraElem>> {
    let f = alg.field();
    let classes: Vec<Vec<usize>> = conjugacy_data(alg.group(), f.characteristic())
        .classes
        .into_iter()
        .map(|c| c.members)
        .collect();
    let q = f.order() as u64;
    let total = q.checked_pow(classes.len() as u32)?;
    if total > CENTER_SEARCH_LIMIT {
        return None;
    }
    let sums = alg.class_sums(&classes);
    let mut out = Vec::new();
    for code in 0..total {
        let mut x = alg.zero();
        let mut rest = code;
        for s in &sums {
            let c = FieldElem((rest % q) as u32);
            rest /= q;
            if !c.is_zero() {
                x = alg.add(&x, &alg.scale(s, c));
            }
        }
        if alg.is_idempotent(&x) {
            out.push(x);
        }
    }
    Some(out)
}

/// Blocks as connected components of the Cartan graph; `e_B` is the sum of
/// the primitive idempotents whose simples lie in `B`.
pub fn block_partition(
    alg: &GroupAlgebra,
    cartan: &[Vec<usize>],
    decomp: &Decomposition,
    trivial_index: usize,
) -> Result<BlockPartition> {
    let parts = components(cartan);
    let mut idempotents = Vec::with_capacity(parts.len());
    for part in &parts {
        let mut e = alg.zero();
        for (f, s) in decomp.idempotents.iter().zip(&decomp.simple_of) {
            if part.contains(s) {
                e = alg.add(&e, f);
            }
        }
        if !alg.is_central(&e) || !alg.is_idempotent(&e) {
            return Err(Error::NonCentralSum(format!("block {part:?}")));
        }
        idempotents.push(e);
    }
    let principal = parts
        .iter()
        .position(|p| p.contains(&trivial_index))
        .expect("parts cover the simples");
    let primitive = match central_idempotents(alg) {
        None => vec![None; parts.len()],
        Some(all) => idempotents
            .iter()
            .map(|e| {
                // a central idempotent strictly below e is some c ≠ 0, e with ce = c
                Some(
                    !all.iter()
                        .any(|c| !c.is_zero() && c != e && alg.mul(c, e) == *c),
                )
            })
            .collect(),
    };
    Ok(BlockPartition {
        parts,
        idempotents,
        principal,
        primitive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockAssignment {
    Single(usize),
    /// `(block, e_B·M)` for every block acting nontrivially
    Split(Vec<(usize, usize)>),
}

/// Which blocks act nontrivially on `m`, with the summands `e_B·M`.
pub fn module_block_summands(m: &Module, bp: &BlockPartition) -> Result<Vec<(usize, Module)>> {
    let mut out = Vec::new();
    for (b, e) in bp.idempotents.iter().enumerate() {
        let image = m.act(e).transpose();
        let span = Subspace::from_rows(&image);
        if span.is_zero() {
            continue;
        }
        let (sub, _) = sub_quotient(m, &span)?;
        out.push((b, sub));
    }
    Ok(out)
}

pub fn module_block_assignment(m: &Module, bp: &BlockPartition) -> Result<BlockAssignment> {
    let parts = module_block_summands(m, bp)?;
    Ok(match parts.as_slice() {
        [(b, _)] => BlockAssignment::Single(*b),
        _ => BlockAssignment::Split(parts.iter().map(|(b, s)| (*b, s.dim())).collect()),
    })
}

/// Character table of a cyclic group of order `m` prime to `p`, with values
/// in the field: row `i` sends the generator `c` to `ζ^{-i}`.
#[derive(Clone, Debug)]
pub struct CyclicCharTable {
    pub order: usize,
    /// parent-group index of the generator `c`
    pub generator: usize,
    /// least element of multiplicative order `m`
    pub root: FieldElem,
    /// `values[i][j] = χ_i(c^j)`
    pub values: Vec<Vec<FieldElem>>,
    /// parent-group index of `c^j`
    pub powers: Vec<usize>,
}

impl CyclicCharTable {
    pub fn new(k: &Subgroup, field: &Field) -> Result<CyclicCharTable> {
        let m = k.order();
        let c = k.cyclic_generator().ok_or(Error::NotCyclic(m))?;
        let p = field.characteristic();
        if m % p as usize == 0 {
            return Err(Error::OrderDivisibleByP(m, p));
        }
        let root = field
            .elements()
            .find(|&x| field.mult_order(x) == Some(m as u64))
            .ok_or(Error::NoSuitableRoot(field.order() as u64, m))?;
        let g = k.parent();
        let mut powers = vec![0];
        for j in 1..m {
            powers.push(g.mul(c, powers[j - 1]));
        }
        let inv = field.inv(root).expect("roots of unity are nonzero");
        let values = (0..m)
            .map(|i| (0..m).map(|j| field.pow(inv, (i * j) as u64)).collect())
            .collect();
        Ok(CyclicCharTable {
            order: m,
            generator: c,
            root,
            values,
            powers,
        })
    }

    /// `(1/m) Σ_j χ_a(c^j) χ_b(c^{-j})`, which is 1 when `a = b` and 0
    /// otherwise.
    pub fn pairing(&self, field: &Field, a: usize, b: usize) -> FieldElem {
        let m = self.order;
        let mut acc = FieldElem::ZERO;
        for j in 0..m {
            let t = field.mul(self.values[a][j], self.values[b][(m - j) % m]);
            acc = field.add(acc, t);
        }
        field.mul(
            acc,
            field
                .inv(field.from_int(m as i64))
                .expect("m is prime to p"),
        )
    }

    /// `e_i = (1/m) Σ_j χ_i(c^{-j}) c^j`.
    pub fn idempotents(&self, alg: &GroupAlgebra) -> Vec<AlgebraElem> {
        let f = alg.field();
        let m = self.order;
        let inv_m = f.inv(f.from_int(m as i64)).expect("m is prime to p");
        (0..m)
            .map(|i| {
                let mut e = alg.zero();
                for j in 0..m {
                    e.0[self.powers[j]] = f.mul(inv_m, self.values[i][(m - j) % m]);
                }
                e
            })
            .collect()
    }
}

/// Orthogonal idempotents of k·K for a cyclic p′-subgroup `K`, as elements of
/// the parent group algebra.
pub fn cyclic_idempotents(k: &Subgroup, field: &Field) -> Result<Vec<AlgebraElem>> {
    let table = CyclicCharTable::new(k, field)?;
    Ok(table.idempotents(&GroupAlgebra::new(k.parent(), field)))
}
