//! The group algebra kG and finite-dimensional kG-modules.
//!
//! A module is stored as one invertible matrix per group generator, acting on
//! column vectors. Matrices for every group element are derived on demand
//! from the generator words recorded in the [`GroupTable`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, FieldSpec};
use crate::linalg::{Echelon, Mat, Subspace};
use crate::perm::{cosets_and_quotient, Group, Quotient, Subgroup};

/// Above this `dim · |G|` the homomorphism check samples products instead of
/// running over every (generator, element) pair.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 4000;
const SAMPLED_CHECKS: usize = 20;
/// Random combinations of a hom basis tried when looking for an isomorphism.
pub const ISO_RETRIES: usize = 8;
pub const ISO_EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// kG: a group together with a coefficient field.
#[derive(Clone)]
pub struct GroupAlgebra {
    group: Group,
    field: Field,
}

impl PartialEq for GroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }
}

impl fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[G of order {}]", self.field, self.group.order())
    }
}

/// An element `Σ a_g g` of kG, coefficients in group-table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElem(pub Vec<FieldElem>);

impl AlgebraElem {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl GroupAlgebra {
    pub fn new(group: &Group, field: &Field) -> GroupAlgebra {
        GroupAlgebra {
            group: group.clone(),
            field: field.clone(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> AlgebraElem {
        AlgebraElem(vec![FieldElem::ZERO; self.dim()])
    }

    pub fn one(&self) -> AlgebraElem {
        self.basis(0)
    }

    /// The group element with index `g`.
    pub fn basis(&self, g: usize) -> AlgebraElem {
        let mut v = self.zero();
        v.0[g] = FieldElem::ONE;
        v
    }

    pub fn add(&self, a: &AlgebraElem, b: &AlgebraElem) -> AlgebraElem {
        let mut out = a.clone();
        self.field.axpy(&mut out.0, FieldElem::ONE, &b.0);
        out
    }

    pub fn sub(&self, a: &AlgebraElem, b: &AlgebraElem) -> AlgebraElem {
        let mut out = a.clone();
        self.field
            .axpy(&mut out.0, self.field.neg(FieldElem::ONE), &b.0);
        out
    }

    pub fn scale(&self, a: &AlgebraElem, c: FieldElem) -> AlgebraElem {
        let mut out = a.clone();
        self.field.scale_slice(&mut out.0, c);
        out
    }

    /// Bilinear extension of the group law.
    pub fn mul(&self, a: &AlgebraElem, b: &AlgebraElem) -> AlgebraElem {
        let f = &self.field;
        let g = &self.group;
        let mut out = self.zero();
        for (x, &ax) in a.0.iter().enumerate() {
            if ax.is_zero() {
                continue;
            }
            for (y, &by) in b.0.iter().enumerate() {
                if by.is_zero() {
                    continue;
                }
                let k = g.mul(x, y);
                out.0[k] = f.add(out.0[k], f.mul(ax, by));
            }
        }
        out
    }

    pub fn is_idempotent(&self, a: &AlgebraElem) -> bool {
        self.mul(a, a) == *a
    }

    /// Commutes with every generator, hence with everything.
    pub fn is_central(&self, a: &AlgebraElem) -> bool {
        self.group.generators().iter().all(|&s| {
            let g = self.basis(s);
            self.mul(&g, a) == self.mul(a, &g)
        })
    }

    pub fn random(&self, rng: &mut impl Rng) -> AlgebraElem {
        let q = self.field.order();
        AlgebraElem(
            (0..self.dim())
                .map(|_| FieldElem(rng.gen_range(0..q)))
                .collect(),
        )
    }

    /// Sum of the elements of each conjugacy class: a basis of the centre.
    pub fn class_sums(&self, classes: &[Vec<usize>]) -> Vec<AlgebraElem> {
        classes
            .iter()
            .map(|cls| {
                let mut v = self.zero();
                for &g in cls {
                    v.0[g] = FieldElem::ONE;
                }
                v
            })
            .collect()
    }
}

/// A kG-module: `dim` and one matrix per group generator.
#[derive(Clone)]
pub struct Module {
    algebra: GroupAlgebra,
    dim: usize,
    gens: Vec<Mat>,
    label: Option<String>,
    elements: OnceLock<Arc<Vec<Mat>>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Module({}, dim {}, over {:?})",
            self.label.as_deref().unwrap_or("?"),
            self.dim,
            self.algebra
        )
    }
}

/// Module exchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub dim: usize,
    pub field: FieldSpec,
    /// one `dim × dim` matrix per group generator, rows outermost, entries as
    /// packed field elements
    pub generators: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Module {
    /// Build and verify a module. The homomorphism property is checked for
    /// every (generator, element) pair when `dim · |G|` is small enough,
    /// otherwise on a fixed sample.
    pub fn new(algebra: &GroupAlgebra, gens: Vec<Mat>, label: Option<String>) -> Result<Module> {
        let dim = gens.first().map_or(0, |m| m.rows());
        Module::with_dim(algebra, dim, gens, label)
    }

    /// As [`Module::new`], with the dimension explicit so that modules for a
    /// group without generators can be built.
    pub fn with_dim(
        algebra: &GroupAlgebra,
        dim: usize,
        gens: Vec<Mat>,
        label: Option<String>,
    ) -> Result<Module> {
        let group = algebra.group();
        if gens.len() != group.num_generators() {
            return Err(Error::InvalidModule(format!(
                "{} generator matrices for {} group generators",
                gens.len(),
                group.num_generators()
            )));
        }
        for (i, m) in gens.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "generator {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule(format!(
                    "generator {i} is over another field"
                )));
            }
            if !m.is_invertible() {
                return Err(Error::InvalidModule(format!("generator {i} is singular")));
            }
        }
        let module = Module::from_parts(algebra, dim, gens, label);
        module.verify()?;
        Ok(module)
    }

    /// Trusted constructor for modules built by correct-by-construction code.
    pub(crate) fn from_parts(
        algebra: &GroupAlgebra,
        dim: usize,
        gens: Vec<Mat>,
        label: Option<String>,
    ) -> Module {
        Module {
            algebra: algebra.clone(),
            dim,
            gens,
            label,
            elements: OnceLock::new(),
        }
    }

    fn verify(&self) -> Result<()> {
        let g = self.algebra.group();
        let mats = self.element_matrices();
        let check = |slot: usize, h: usize| -> Result<()> {
            let s = g.generators()[slot];
            if self.gens[slot].mul(&mats[h]) != mats[g.mul(s, h)] {
                return Err(Error::InvalidModule(format!(
                    "generator {slot} times element {} disagrees with the group law",
                    g.element(h)
                )));
            }
            Ok(())
        };
        if self.dim * g.order() <= EXHAUSTIVE_CHECK_LIMIT {
            for slot in 0..self.gens.len() {
                for h in 0..g.order() {
                    check(slot, h)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_6472_6570);
            for _ in 0..SAMPLED_CHECKS {
                let slot = rng.gen_range(0..self.gens.len());
                check(slot, rng.gen_range(0..g.order()))?;
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &GroupAlgebra) -> Module {
        let f = algebra.field();
        let gens = (0..algebra.group().num_generators())
            .map(|_| Mat::zero(f, 0, 0))
            .collect();
        Module::from_parts(algebra, 0, gens, Some("0".into()))
    }

    pub fn trivial(algebra: &GroupAlgebra) -> Module {
        let f = algebra.field();
        let gens = (0..algebra.group().num_generators())
            .map(|_| Mat::identity(f, 1))
            .collect();
        Module::from_parts(algebra, 1, gens, Some("trivial".into()))
    }

    /// One-dimensional module with prescribed generator scalars.
    pub fn linear_character(
        algebra: &GroupAlgebra,
        values: &[FieldElem],
        label: Option<String>,
    ) -> Result<Module> {
        let f = algebra.field();
        let gens = values
            .iter()
            .map(|&v| Mat::from_elems(f, 1, 1, vec![v]))
            .collect();
        Module::new(algebra, gens, label)
    }

    pub fn from_spec(algebra: &GroupAlgebra, spec: &ModuleSpec) -> Result<Module> {
        let field = Field::from_spec(&spec.field)?;
        if field != *algebra.field() {
            return Err(Error::AlgebraMismatch(format!(
                "module over {field}, algebra over {}",
                algebra.field()
            )));
        }
        let gens = spec
            .generators
            .iter()
            .map(|rows| {
                if rows.len() != spec.dim || rows.iter().any(|r| r.len() != spec.dim) {
                    return Err(Error::InvalidModule(format!(
                        "generator matrix is not {0}x{0}",
                        spec.dim
                    )));
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|&c| field.elem(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Mat::from_elems(&field, spec.dim, spec.dim, data))
            })
            .collect::<Result<Vec<_>>>()?;
        Module::with_dim(algebra, spec.dim, gens, spec.label.clone())
    }

    pub fn to_spec(&self) -> ModuleSpec {
        ModuleSpec {
            dim: self.dim,
            field: self.algebra.field().spec(),
            generators: self
                .gens
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(|c| c.0).collect())
                        .collect()
                })
                .collect(),
            label: self.label.clone(),
        }
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn group(&self) -> &Group {
        self.algebra.group()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Module {
        self.label = Some(label.into());
        self
    }

    /// `ρ(g)` for every group element, in table order.
    pub fn element_matrices(&self) -> &[Mat] {
        self.elements.get_or_init(|| {
            let g = self.algebra.group();
            let mut out: Vec<Mat> = Vec::with_capacity(g.order());
            out.push(Mat::identity(self.field(), self.dim));
            for i in 1..g.order() {
                let (slot, parent) = g.word_step(i).expect("non-identity elements have words");
                let m = self.gens[slot].mul(&out[parent]);
                out.push(m);
            }
            Arc::new(out)
        })
    }

    pub fn element_matrix(&self, g: usize) -> &Mat {
        &self.element_matrices()[g]
    }

    /// `ρ(a) = Σ a_g ρ(g)`.
    pub fn act(&self, a: &AlgebraElem) -> Mat {
        let mut out = Mat::zero(self.field(), self.dim, self.dim);
        for (g, &c) in a.0.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, self.element_matrix(g));
            }
        }
        out
    }

    fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(format!(
                "{:?} vs {:?}",
                self.algebra, other.algebra
            )));
        }
        Ok(())
    }
}

/// kG acting on itself by left multiplication.
pub fn regular_module(algebra: &GroupAlgebra) -> Module {
    let g = algebra.group();
    let f = algebra.field();
    let n = g.order();
    let gens = g
        .generators()
        .iter()
        .map(|&s| {
            let mut m = Mat::zero(f, n, n);
            for h in 0..n {
                m.set(g.mul(s, h), h, FieldElem::ONE);
            }
            m
        })
        .collect();
    Module::from_parts(algebra, n, gens, Some("regular".into()))
}

/// The natural permutation module on the points the group acts on.
pub fn permutation_module(algebra: &GroupAlgebra) -> Module {
    let g = algebra.group();
    let f = algebra.field();
    let n = g.degree();
    let gens = g
        .generator_perms()
        .iter()
        .map(|p| {
            let mut m = Mat::zero(f, n, n);
            for i in 0..n {
                m.set(p.image(i), i, FieldElem::ONE);
            }
            m
        })
        .collect();
    Module::from_parts(algebra, n, gens, Some("permutation".into()))
}

/// Closure of `seeds` under a set of matrices.
pub fn spin_with(mats: &[Mat], field: &Field, dim: usize, seeds: &[Vec<FieldElem>]) -> Subspace {
    let mut ech = Echelon::new(field, dim);
    let mut queue: Vec<Vec<FieldElem>> = Vec::new();
    for s in seeds {
        if let Some(row) = ech.insert(s) {
            queue.push(row.to_vec());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.dim() == dim {
            break;
        }
        for m in mats {
            let w = m.mul_vec(&v);
            if let Some(row) = ech.insert(&w) {
                queue.push(row.to_vec());
            }
        }
    }
    ech.into_subspace()
}

/// The submodule generated by `seeds`.
pub fn spin(m: &Module, seeds: &[Vec<FieldElem>]) -> Result<Subspace> {
    if let Some(s) = seeds.iter().find(|s| s.len() != m.dim) {
        return Err(Error::DimensionMismatch(format!(
            "seed of length {} for a module of dimension {}",
            s.len(),
            m.dim
        )));
    }
    Ok(spin_with(&m.gens, m.field(), m.dim, seeds))
}

pub fn is_invariant(m: &Module, s: &Subspace) -> bool {
    m.gens
        .iter()
        .all(|a| (0..s.dim()).all(|i| s.contains(&a.mul_vec(s.basis().row(i)))))
}

/// The submodule on `s` (in its RREF basis) and the quotient on the
/// non-pivot unit vectors.
pub fn sub_quotient(m: &Module, s: &Subspace) -> Result<(Module, Module)> {
    if s.ambient() != m.dim {
        return Err(Error::DimensionMismatch(format!(
            "subspace of F^{} in a module of dimension {}",
            s.ambient(),
            m.dim
        )));
    }
    let f = m.field();
    let np = s.non_pivots();
    let mut sub_gens = Vec::with_capacity(m.gens.len());
    let mut quot_gens = Vec::with_capacity(m.gens.len());
    for (slot, a) in m.gens.iter().enumerate() {
        let mut sub = Mat::zero(f, s.dim(), s.dim());
        for i in 0..s.dim() {
            let img = a.mul_vec(s.basis().row(i));
            if !s.contains(&img) {
                return Err(Error::NotInvariant(slot));
            }
            for (r, c) in s.coords(&img).into_iter().enumerate() {
                sub.set(r, i, c);
            }
        }
        let mut quot = Mat::zero(f, np.len(), np.len());
        for (j, &col) in np.iter().enumerate() {
            let img = a.column(col);
            for (r, c) in s.quotient_coords(&img).into_iter().enumerate() {
                quot.set(r, j, c);
            }
        }
        sub_gens.push(sub);
        quot_gens.push(quot);
    }
    Ok((
        Module::from_parts(&m.algebra, s.dim(), sub_gens, None),
        Module::from_parts(&m.algebra, np.len(), quot_gens, None),
    ))
}

/// `upper / lower` for submodules `lower ⊆ upper` of `m`.
pub fn section(m: &Module, upper: &Subspace, lower: &Subspace) -> Result<Module> {
    let (sub, _) = sub_quotient(m, upper)?;
    let lower_coords: Vec<Vec<FieldElem>> =
        lower.vectors().iter().map(|v| upper.coords(v)).collect();
    let inner = Subspace::span(m.field(), upper.dim(), &lower_coords);
    Ok(sub_quotient(&sub, &inner)?.1)
}

/// Embed a subspace given in quotient coordinates (`F^n / s`) back into
/// `F^n`, adding `s`.
pub fn preimage(s: &Subspace, in_quotient: &Subspace) -> Subspace {
    let np = s.non_pivots();
    let n = s.ambient();
    let mut vecs = s.vectors();
    for w in in_quotient.vectors() {
        let mut v = vec![FieldElem::ZERO; n];
        for (k, &c) in np.iter().enumerate() {
            v[c] = w[k];
        }
        vecs.push(v);
    }
    Subspace::span(s.field(), n, &vecs)
}

/// A kG-homomorphism `source → target` as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub mat: Mat,
}

/// Basis of `Hom_kG(v, w)`: the nullspace of `X ρ_v(s) = ρ_w(s) X` over all
/// generators `s`, unknowns ordered row-major in `X`.
pub fn hom_space(v: &Module, w: &Module) -> Result<Vec<ModuleHom>> {
    v.check_same_algebra(w)?;
    let f = v.field();
    let (n, m) = (v.dim, w.dim);
    let unknowns = n * m;
    if unknowns == 0 {
        return Ok(vec![]);
    }
    let gens = v.gens.len();
    let mut sys = Mat::zero(f, gens * unknowns, unknowns);
    for (k, (a, b)) in v.gens.iter().zip(&w.gens).enumerate() {
        for i in 0..m {
            for j in 0..n {
                let row = k * unknowns + i * n + j;
                // Σ_l X[i][l] A[l][j]
                for l in 0..n {
                    let c = a.get(l, j);
                    if !c.is_zero() {
                        let col = i * n + l;
                        sys.set(row, col, f.add(sys.get(row, col), c));
                    }
                }
                // - Σ_l B[i][l] X[l][j]
                for l in 0..m {
                    let c = b.get(i, l);
                    if !c.is_zero() {
                        let col = l * n + j;
                        sys.set(row, col, f.sub(sys.get(row, col), c));
                    }
                }
            }
        }
    }
    let ns = sys.nullspace();
    Ok((0..ns.rows())
        .map(|r| ModuleHom {
            mat: Mat::from_elems(f, m, n, ns.row(r).to_vec()),
        })
        .collect())
}

pub fn hom_dim(v: &Module, w: &Module) -> Result<usize> {
    Ok(hom_space(v, w)?.len())
}

/// An isomorphism `v → w`, searched as a random combination of the hom basis
/// (bounded retries, deterministic seed). When the random tries miss and the
/// hom space has at most `ISO_EXHAUSTIVE_LIMIT` elements, every combination
/// is tried, so the answer is exact there.
pub fn find_isomorphism(v: &Module, w: &Module, seed: u64) -> Result<Option<Mat>> {
    v.check_same_algebra(w)?;
    if v.dim != w.dim {
        return Ok(None);
    }
    if v.dim == 0 {
        return Ok(Some(Mat::zero(v.field(), 0, 0)));
    }
    let basis = hom_space(v, w)?;
    if basis.is_empty() {
        return Ok(None);
    }
    if basis.len() == 1 {
        let m = &basis[0].mat;
        return Ok(m.is_invertible().then(|| m.clone()));
    }
    let f = v.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RETRIES {
        let mut x = Mat::zero(f, w.dim, v.dim);
        for h in &basis {
            x.add_scaled(FieldElem(rng.gen_range(0..f.order())), &h.mat);
        }
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    let q = f.order() as u64;
    let total = q
        .checked_pow(basis.len() as u32)
        .filter(|&t| t <= ISO_EXHAUSTIVE_LIMIT);
    for mut code in 1..total.unwrap_or(0) {
        let mut x = Mat::zero(f, w.dim, v.dim);
        for h in &basis {
            x.add_scaled(FieldElem((code % q) as u32), &h.mat);
            code /= q;
        }
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(v: &Module, w: &Module, seed: u64) -> Result<bool> {
    Ok(find_isomorphism(v, w, seed)?.is_some())
}

/// Block-diagonal sum.
pub fn direct_sum(ms: &[&Module]) -> Result<Module> {
    let Some(first) = ms.first() else {
        return Err(Error::AlgebraMismatch("direct sum of an empty list".into()));
    };
    for m in ms {
        first.check_same_algebra(m)?;
    }
    let f = first.field();
    let gens = (0..first.gens.len())
        .map(|k| {
            let blocks: Vec<&Mat> = ms.iter().map(|m| &m.gens[k]).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let dim = ms.iter().map(|m| m.dim).sum();
    let label = ms
        .iter()
        .map(|m| m.label().unwrap_or("?").to_string())
        .collect::<Vec<_>>()
        .join("+");
    Ok(Module::from_parts(&first.algebra, dim, gens, Some(label)))
}

/// `g ↦ ρ(g⁻¹)ᵀ`.
pub fn dual(m: &Module) -> Module {
    let gens = m
        .gens
        .iter()
        .map(|a| {
            a.inverse()
                .expect("generator matrices are invertible")
                .transpose()
        })
        .collect();
    let label = m.label().map(|l| format!("{l}*"));
    Module::from_parts(&m.algebra, m.dim, gens, label)
}

/// Restriction to a group of the same degree whose elements lie in the
/// module's group.
pub fn restrict(m: &Module, h: &Group) -> Result<Module> {
    let g = m.group();
    if h.degree() != g.degree() {
        return Err(Error::NotSubgroup(format!(
            "degree {} differs from {}",
            h.degree(),
            g.degree()
        )));
    }
    let gens = h
        .generator_perms()
        .iter()
        .map(|p| {
            g.index_of(p)
                .map(|i| m.element_matrix(i).clone())
                .ok_or_else(|| Error::NotSubgroup(format!("{p} is not in the parent group")))
        })
        .collect::<Result<Vec<_>>>()?;
    let alg = GroupAlgebra::new(h, m.field());
    let label = m.label().map(|l| format!("{l}|"));
    Ok(Module::from_parts(&alg, m.dim, gens, label))
}

/// Induction from the module's group H to a group G containing it:
/// `t·(x_i ⊗ u) = x_j ⊗ (h u)` where `t x_i = x_j h`, with the transversal
/// of least coset elements.
pub fn induce(m: &Module, g: &Group) -> Result<Module> {
    let h = m.group();
    let sub = Subgroup::embed(g, h)?;
    let cos = cosets_and_quotient(g, &sub)?;
    let k = cos.transversal.len();
    let d = m.dim;
    let f = m.field();
    let gens = g
        .generators()
        .iter()
        .map(|&t| {
            let mut big = Mat::zero(f, k * d, k * d);
            for (i, &xi) in cos.transversal.iter().enumerate() {
                let txi = g.mul(t, xi);
                let j = cos.coset_of[txi];
                let hh = g.mul(g.inverse(cos.transversal[j]), txi);
                let h_idx = h
                    .index_of(g.element(hh))
                    .expect("coset decomposition lands in the subgroup");
                let block = m.element_matrix(h_idx);
                for r in 0..d {
                    for c in 0..d {
                        big.set(j * d + r, i * d + c, block.get(r, c));
                    }
                }
            }
            big
        })
        .collect();
    let alg = GroupAlgebra::new(g, f);
    let label = m.label().map(|l| format!("{l}^G"));
    Ok(Module::from_parts(&alg, k * d, gens, label))
}

/// Pull a module for `G/N` back along the recorded projection.
pub fn inflate(m: &Module, g: &Group, quotient: &Quotient) -> Result<Module> {
    if *quotient.group != **m.group() {
        return Err(Error::NoQuotientRecorded(
            "module is not over the recorded quotient group".into(),
        ));
    }
    if quotient.projection.len() != g.order() {
        return Err(Error::NoQuotientRecorded(
            "projection does not start at this group".into(),
        ));
    }
    let gens = g
        .generators()
        .iter()
        .map(|&s| m.element_matrix(quotient.projection[s]).clone())
        .collect();
    let alg = GroupAlgebra::new(g, m.field());
    let label = m.label().map(|l| format!("Inf({l})"));
    Ok(Module::from_parts(&alg, m.dim, gens, label))
}

/// The change-of-group functors under one roof.
pub enum ChangeOfGroup<'a> {
    Restrict(&'a Group),
    Induce(&'a Group),
    Inflate {
        group: &'a Group,
        quotient: &'a Quotient,
    },
    Dual,
}

pub fn change_of_group(m: &Module, op: ChangeOfGroup<'_>) -> Result<Module> {
    match op {
        ChangeOfGroup::Restrict(h) => restrict(m, h),
        ChangeOfGroup::Induce(g) => induce(m, g),
        ChangeOfGroup::Inflate { group, quotient } => inflate(m, group, quotient),
        ChangeOfGroup::Dual => Ok(dual(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{builtin, normal_p_core};

    fn fe(v: &[u32]) -> Vec<FieldElem> {
        v.iter().map(|&c| FieldElem(c)).collect()
    }

    fn gf4() -> Field {
        Field::gf(2, 2)
    }

    /// The 2-dim kA4 modules: (1,2,3) ↦ diag(a, b),
    /// (1,2)(3,4) ↦ [[1, ω], [0, 1]].
    fn two_dim_a4(a: u32, b: u32) -> Module {
        let f = gf4();
        let alg = GroupAlgebra::new(&builtin("A4").unwrap(), &f);
        Module::new(
            &alg,
            vec![
                Mat::from_u32(&f, 2, 2, &[a, 0, 0, b]),
                Mat::from_u32(&f, 2, 2, &[1, 2, 0, 1]),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn regular_kc2_swaps() {
        let f = Field::gf(2, 1);
        let alg = GroupAlgebra::new(&builtin("C2").unwrap(), &f);
        let r = regular_module(&alg);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.generators()[0], Mat::from_u32(&f, 2, 2, &[0, 1, 1, 0]));
        let triv = GroupAlgebra::new(&builtin("C1").unwrap(), &f);
        let r1 = regular_module(&triv);
        assert_eq!(r1.dim(), 1);
        assert!(r1.generators().is_empty());
    }

    #[test]
    fn regular_and_permutation_modules_validate() {
        let alg = GroupAlgebra::new(&builtin("A5").unwrap(), &gf4());
        let r = regular_module(&alg);
        assert_eq!(r.dim(), 60);
        Module::new(&alg, r.generators().to_vec(), None).unwrap();
        let w = permutation_module(&alg);
        assert_eq!(w.dim(), 5);
        Module::new(&alg, w.generators().to_vec(), None).unwrap();
    }

    #[test]
    fn invalid_modules_rejected() {
        let f = gf4();
        let alg = GroupAlgebra::new(&builtin("A4").unwrap(), &f);
        // (1,2,3) ↦ ω, (1,2)(3,4) ↦ ω fails b² = 1
        let bad = Module::new(
            &alg,
            vec![Mat::from_u32(&f, 1, 1, &[2]), Mat::from_u32(&f, 1, 1, &[2])],
            None,
        );
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let wrong_count = Module::new(&alg, vec![Mat::identity(&f, 1)], None);
        assert!(matches!(wrong_count, Err(Error::InvalidModule(_))));
        let singular = Module::new(&alg, vec![Mat::zero(&f, 1, 1), Mat::identity(&f, 1)], None);
        assert!(matches!(singular, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn stated_two_dim_a4_modules_extend() {
        // all six diagonal patterns pair two distinct cube roots of unity
        for (a, b) in [(2, 3), (3, 2), (1, 2), (2, 1), (3, 1), (1, 3)] {
            let m = two_dim_a4(a, b);
            assert_eq!(m.dim(), 2);
        }
    }

    #[test]
    fn spin_examples() {
        let m = two_dim_a4(2, 3);
        let s = spin(&m, &[fe(&[1, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(spin(&m, &[fe(&[0, 0])]).unwrap().is_zero());
        assert!(spin(&m, &[fe(&[1, 0]), fe(&[0, 1])]).unwrap().is_full());
        assert!(matches!(
            spin(&m, &[fe(&[1])]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sub_quotient_of_m1() {
        let f = gf4();
        let m = two_dim_a4(2, 3);
        let s = Subspace::span(&f, 2, &[fe(&[1, 0])]);
        let (sub, quot) = sub_quotient(&m, &s).unwrap();
        // sub: (1,2,3) ↦ ω, quotient: (1,2,3) ↦ ω²
        assert_eq!(sub.generators()[0].get(0, 0), FieldElem(2));
        assert_eq!(quot.generators()[0].get(0, 0), FieldElem(3));
        assert!(sub.generators()[1].is_identity());
        assert!(quot.generators()[1].is_identity());
        let bad = Subspace::span(&f, 2, &[fe(&[0, 1])]);
        assert_eq!(sub_quotient(&m, &bad).unwrap_err(), Error::NotInvariant(1));
        let (z, q) = sub_quotient(&m, &Subspace::zero(&f, 2)).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(is_isomorphic(&q, &m, 0).unwrap());
    }

    #[test]
    fn regular_kc2_trivial_sub() {
        let f = Field::gf(2, 1);
        let alg = GroupAlgebra::new(&builtin("C2").unwrap(), &f);
        let r = regular_module(&alg);
        let s = Subspace::span(&f, 2, &[fe(&[1, 1])]);
        let (sub, quot) = sub_quotient(&r, &s).unwrap();
        let t = Module::trivial(&alg);
        assert!(is_isomorphic(&sub, &t, 0).unwrap());
        assert!(is_isomorphic(&quot, &t, 0).unwrap());
    }

    /// Oracle: enumerate every 2×2 matrix over GF(2) and keep the ones
    /// commuting with the swap.
    #[test]
    fn hom_regular_kc2_brute_force() {
        let f = Field::gf(2, 1);
        let alg = GroupAlgebra::new(&builtin("C2").unwrap(), &f);
        let r = regular_module(&alg);
        let swap = &r.generators()[0];
        let mut count = 0;
        for code in 0u32..16 {
            let m = Mat::from_u32(
                &f,
                2,
                2,
                &[code & 1, code >> 1 & 1, code >> 2 & 1, code >> 3 & 1],
            );
            if m.mul(swap) == swap.mul(&m) {
                count += 1;
            }
        }
        assert_eq!(count, 4);
        // a space with 4 elements over GF(2) has dimension 2
        assert_eq!(hom_dim(&r, &r).unwrap(), 2);
    }

    #[test]
    fn dual_of_trivial_and_involution() {
        let alg = GroupAlgebra::new(&builtin("A4").unwrap(), &gf4());
        let t = Module::trivial(&alg);
        assert_eq!(dual(&t).generators(), t.generators());
        let m = two_dim_a4(2, 3);
        let dd = dual(&dual(&m));
        assert_eq!(dd.generators(), m.generators());
        Module::new(m.algebra(), dual(&m).generators().to_vec(), None).unwrap();
    }

    #[test]
    fn inflation_from_c3() {
        let f = gf4();
        let a4 = builtin("A4").unwrap();
        let core = normal_p_core(&a4, 2);
        let q = cosets_and_quotient(&a4, &core).unwrap().quotient.unwrap();
        let qalg = GroupAlgebra::new(&q.group, &f);
        // quotient generators are the images of (1,2,3) and (1,2)(3,4)
        let t2 = Module::linear_character(&qalg, &[FieldElem(2), FieldElem::ONE], None).unwrap();
        let inf = inflate(&t2, &a4, &q).unwrap();
        assert_eq!(inf.generators()[0].get(0, 0), FieldElem(2));
        assert!(inf.generators()[1].is_identity());
        Module::new(inf.algebra(), inf.generators().to_vec(), None).unwrap();
        let other = GroupAlgebra::new(&builtin("C3").unwrap(), &f);
        assert!(matches!(
            inflate(&Module::trivial(&other), &a4, &q),
            Err(Error::NoQuotientRecorded(_))
        ));
    }

    #[test]
    fn induction_dimension_and_validity() {
        let f = gf4();
        let a4 = builtin("A4").unwrap();
        let a5 = builtin("A5").unwrap();
        let alg4 = GroupAlgebra::new(&a4, &f);
        let m = two_dim_a4(2, 3);
        let ind = induce(&m, &a5).unwrap();
        assert_eq!(ind.dim(), 10);
        Module::new(ind.algebra(), ind.generators().to_vec(), None).unwrap();
        let t = induce(&Module::trivial(&alg4), &a5).unwrap();
        let w = permutation_module(&GroupAlgebra::new(&a5, &f));
        assert!(is_isomorphic(&t, &w, 1).unwrap());
        let s4 = builtin("S4").unwrap();
        assert!(matches!(induce(&m, &s4), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn restriction_roundtrip() {
        let f = gf4();
        let a4 = builtin("A4").unwrap();
        let a5 = builtin("A5").unwrap();
        let w = permutation_module(&GroupAlgebra::new(&a5, &f));
        let r = restrict(&w, &a4).unwrap();
        assert_eq!(r.dim(), 5);
        Module::new(r.algebra(), r.generators().to_vec(), None).unwrap();
        let s4 = builtin("S4").unwrap();
        assert!(restrict(&w, &s4).is_err());
    }

    #[test]
    fn direct_sums() {
        let alg = GroupAlgebra::new(&builtin("A4").unwrap(), &gf4());
        let t = Module::trivial(&alg);
        let z = Module::zero(&alg);
        let s = direct_sum(&[&t, &z]).unwrap();
        assert_eq!(s.generators(), t.generators());
        let other = GroupAlgebra::new(&builtin("C3").unwrap(), &gf4());
        assert!(matches!(
            direct_sum(&[&t, &Module::trivial(&other)]),
            Err(Error::AlgebraMismatch(_))
        ));
    }

    #[test]
    fn module_spec_roundtrip() {
        let m = two_dim_a4(2, 3).with_label("M1");
        let spec = m.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"field":{"char":2,"degree":2,"modulus":[1,1,1]},"generators":[[[2,0],[0,3]],[[1,2],[0,1]]],"label":"M1"}"#
        );
        let back: ModuleSpec = serde_json::from_str(&json).unwrap();
        let m2 = Module::from_spec(m.algebra(), &back).unwrap();
        assert_eq!(m2.generators(), m.generators());
    }

    #[test]
    fn algebra_multiplication() {
        let f = Field::gf(2, 1);
        let alg = GroupAlgebra::new(&builtin("C2").unwrap(), &f);
        let x = alg.add(&alg.one(), &alg.basis(1)); // 1 + g
        assert!(alg.mul(&x, &x).is_zero());
        assert!(alg.is_central(&x));
        assert!(alg.is_idempotent(&alg.one()));
    }

    #[test]
    fn isomorphism_found_for_every_seed() {
        let alg = GroupAlgebra::new(&builtin("C3").unwrap(), &Field::gf(2, 1));
        let t = Module::trivial(&alg);
        let sum = direct_sum(&[&t, &t, &t]).unwrap();
        for seed in 0..64 {
            assert!(is_isomorphic(&sum, &sum, seed).unwrap(), "seed {seed}");
        }
    }
}
