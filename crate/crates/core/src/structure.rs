//! Simple modules, the Jacobson radical, primitive idempotents, projective
//! indecomposables and the Cartan matrix of kG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{solve, Echelon, Mat, Subspace};
use crate::loewy::{radical_and_socle_series, LoewyData};
use crate::meataxe::{composition_factors, composition_multiplicities};
use crate::module::{
    dual, hom_dim, is_isomorphic, regular_module, spin, sub_quotient, AlgebraElem, GroupAlgebra,
    Module,
};
use crate::perm::conjugacy_data;
use crate::poly::{factor, Poly};

/// Reseeds of the regular-module chop before giving up on the class count.
pub const SIMPLE_RETRIES: u64 = 5;
/// Random corner elements tried per non-primitive idempotent.
pub const SPLIT_ATTEMPTS: usize = 200;

#[derive(Clone, Debug)]
pub struct SimpleSet {
    /// sorted by dimension, then by discovery order; labelled `S1, S2, …`
    pub simples: Vec<Module>,
    /// `dim End_kG(S)` for each simple
    pub endo_dims: Vec<usize>,
    /// every simple is absolutely irreducible
    pub splitting: bool,
    pub p_regular_classes: usize,
}

impl SimpleSet {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.len()).map(|i| format!("S{i}")).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(Module::dim).collect()
    }

    /// Index of the simple isomorphic to `m`, if any.
    pub fn index_of(&self, m: &Module) -> Result<Option<usize>> {
        for (i, s) in self.simples.iter().enumerate() {
            if s.dim() == m.dim() && hom_dim(s, m)? > 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn trivial_index(&self) -> usize {
        let t = Module::trivial(self.simples[0].algebra());
        self.index_of(&t)
            .ok()
            .flatten()
            .expect("the trivial module is always found")
    }
}

fn simples_once(alg: &GroupAlgebra, seed: u64) -> Result<Vec<Module>> {
    // the trivial module is simple, so it is discovered first
    let mut found = vec![Module::trivial(alg)];
    for (m, _) in composition_factors(&regular_module(alg), seed)? {
        let mut known = false;
        for s in &found {
            if s.dim() == m.dim() && hom_dim(s, &m)? > 0 {
                known = true;
                break;
            }
        }
        if !known {
            found.push(m);
        }
    }
    found.sort_by_key(Module::dim);
    Ok(found)
}

/// All simple kG-modules up to isomorphism, by chopping the regular module.
pub fn find_simples(alg: &GroupAlgebra, seed: u64) -> Result<SimpleSet> {
    let p = alg.field().characteristic();
    let regular_classes = conjugacy_data(alg.group(), p).p_regular_count;
    let mut last = 0;
    for attempt in 0..SIMPLE_RETRIES {
        let found = simples_once(alg, seed.wrapping_add(attempt.wrapping_mul(0x5851_f42d)))?;
        let endo_dims = found
            .iter()
            .map(|s| hom_dim(s, s))
            .collect::<Result<Vec<_>>>()?;
        let splitting = endo_dims.iter().all(|&e| e == 1);
        last = found.len();
        if splitting && found.len() != regular_classes {
            continue;
        }
        let simples = found
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.with_label(format!("S{}", i + 1)))
            .collect();
        return Ok(SimpleSet {
            simples,
            endo_dims,
            splitting,
            p_regular_classes: regular_classes,
        });
    }
    Err(Error::ChopInstability(format!(
        "found {last} simples but there are {regular_classes} p-regular classes"
    )))
}

#[derive(Clone, Debug)]
pub struct Radical {
    /// `J(kG)` as a subspace of kG in the group-element basis
    pub space: Subspace,
    /// least `n` with `Jⁿ = 0`
    pub nilpotency: usize,
    /// `J¹, J², …, J^{n-1}`
    pub powers: Vec<Subspace>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, a: &AlgebraElem) -> bool {
        self.space.contains(&a.0)
    }

    /// Canonical representative of `a + J`.
    pub fn reduce(&self, a: &AlgebraElem) -> AlgebraElem {
        AlgebraElem(self.space.reduce(&a.0))
    }
}

/// `J(kG)` as the common kernel of the simple representations.
pub fn jacobson_radical(alg: &GroupAlgebra, simples: &SimpleSet) -> Result<Radical> {
    let f = alg.field();
    let n = alg.dim();
    let width: usize = simples.simples.iter().map(|s| s.dim() * s.dim()).sum();
    // rows indexed by group elements, columns by the entries of all ρ_S(g)
    let mut m = Mat::zero(f, n, width);
    for g in 0..n {
        let mut col = 0;
        for s in &simples.simples {
            for &c in s.element_matrix(g).data() {
                m.set(g, col, c);
                col += 1;
            }
        }
    }
    let space = Subspace::from_rows(&m.left_nullspace());
    let expected: usize = n - simples
        .simples
        .iter()
        .zip(&simples.endo_dims)
        .map(|(s, &e)| s.dim() * s.dim() / e)
        .sum::<usize>();
    if space.dim() != expected {
        return Err(Error::IncompleteSimpleSet(format!(
            "radical has dimension {} but the simples predict {expected}",
            space.dim()
        )));
    }
    let basis: Vec<AlgebraElem> = space.vectors().into_iter().map(AlgebraElem).collect();
    let mut powers = Vec::new();
    let mut cur = space.clone();
    while !cur.is_zero() {
        powers.push(cur.clone());
        let mut ech = Echelon::new(f, n);
        for x in cur.vectors() {
            let x = AlgebraElem(x);
            for y in &basis {
                ech.insert(&alg.mul(&x, y).0);
            }
        }
        let next = ech.into_subspace();
        if next.dim() >= cur.dim() {
            return Err(Error::IncompleteSimpleSet(
                "common kernel of the simples is not nilpotent".into(),
            ));
        }
        cur = next;
    }
    Ok(Radical {
        space,
        nilpotency: powers.len() + 1,
        powers,
    })
}

/// Lift an idempotent of `kG/J` to an idempotent of kG by iterating
/// `a ↦ 3a² − 2a³`, which squares the defect `a² − a` modulo `J` each round.
pub fn lift_idempotent(alg: &GroupAlgebra, a: &AlgebraElem, rad: &Radical) -> Result<AlgebraElem> {
    let f = alg.field();
    let defect = alg.sub(&alg.mul(a, a), a);
    if !rad.contains(&defect) {
        return Err(Error::NotIdempotentModRad);
    }
    let rounds = (usize::BITS - (rad.nilpotency.max(1) - 1).leading_zeros()) as usize + 1;
    let three = f.from_int(3);
    let minus_two = f.from_int(-2);
    let mut x = a.clone();
    for _ in 0..=rounds {
        let x2 = alg.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = alg.mul(&x2, &x);
        x = alg.add(&alg.scale(&x2, three), &alg.scale(&x3, minus_two));
    }
    Err(Error::NoConvergence(format!(
        "not idempotent after {rounds} rounds"
    )))
}

struct QuotientAlgebra<'a> {
    alg: &'a GroupAlgebra,
    rad: &'a Radical,
}

impl QuotientAlgebra<'_> {
    fn mul(&self, a: &AlgebraElem, b: &AlgebraElem) -> AlgebraElem {
        self.rad.reduce(&self.alg.mul(a, b))
    }

    /// `a · g` is a relabelling of coefficients.
    fn mul_group(&self, a: &AlgebraElem, g: usize) -> AlgebraElem {
        let grp = self.alg.group();
        let mut out = self.alg.zero();
        for (h, &c) in a.0.iter().enumerate() {
            out.0[grp.mul(h, g)] = c;
        }
        out
    }

    fn corner_dim(&self, e: &AlgebraElem) -> usize {
        let mut ech = Echelon::new(self.alg.field(), self.alg.dim());
        for g in 0..self.alg.dim() {
            ech.insert(&self.mul(&self.mul_group(e, g), e).0);
        }
        ech.dim()
    }

    fn eval(&self, p: &Poly, x: &AlgebraElem, e: &AlgebraElem) -> AlgebraElem {
        let mut acc = self.alg.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.alg.add(&acc, &self.alg.scale(e, c));
        }
        acc
    }

    /// Minimal polynomial of `x` in the corner with identity `e`.
    fn min_poly(&self, x: &AlgebraElem, e: &AlgebraElem) -> Result<Poly> {
        let f = self.alg.field();
        let mut powers = vec![e.0.clone()];
        loop {
            let next = self.mul(&AlgebraElem(powers.last().expect("non-empty").clone()), x);
            let a = Mat::from_rows(f, self.alg.dim(), &powers).transpose();
            let b = Mat::from_elems(f, self.alg.dim(), 1, next.0.clone());
            if let Some((sol, _)) = solve(&a, &b)? {
                let mut coeffs: Vec<FieldElem> =
                    (0..powers.len()).map(|i| f.neg(sol.get(i, 0))).collect();
                coeffs.push(FieldElem::ONE);
                return Ok(Poly::new(f, coeffs));
            }
            powers.push(next.0);
        }
    }

    /// Orthogonal idempotents summing to `e`, from the primary decomposition
    /// of a random corner element; `None` if the element was primary.
    fn try_split(&self, e: &AlgebraElem, rng: &mut ChaCha8Rng) -> Result<Option<Vec<AlgebraElem>>> {
        let r = self.alg.random(rng);
        let x = self.mul(&self.mul(e, &r), e);
        let mu = self.min_poly(&x, e)?;
        let factors = factor(&mu)?;
        if factors.len() < 2 {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(factors.len());
        for (p, a) in &factors {
            let pa = p.pow(*a as u64);
            let (q, _) = mu.div_rem(&pa);
            let (_, s, _) = q.ext_gcd(&pa);
            let c = s.mul(&q).rem(&mu);
            out.push(self.eval(&c, &x, e));
        }
        Ok(Some(out))
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// orthogonal primitive idempotents of kG summing to 1
    pub idempotents: Vec<AlgebraElem>,
    /// the simple `kG f / J f` for each idempotent
    pub simple_of: Vec<usize>,
    /// `kG f` for each idempotent
    pub pims: Vec<Module>,
}

impl Decomposition {
    /// The first idempotent belonging to simple `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.simple_of
            .iter()
            .position(|&s| s == i)
            .expect("every simple has an idempotent")
    }

    pub fn pim(&self, i: usize) -> &Module {
        &self.pims[self.representative(i)]
    }
}

/// Split `1` into primitive idempotents of `kG/J`, lift them one at a time
/// inside the complement of those already lifted, and spin the projective
/// indecomposables.
pub fn primitive_decomposition(
    alg: &GroupAlgebra,
    simples: &SimpleSet,
    rad: &Radical,
    seed: u64,
) -> Result<Decomposition> {
    if !simples.splitting {
        return Err(Error::SplittingFieldRequired(format!(
            "{} is not a splitting field; End dimensions {:?}",
            alg.field(),
            simples.endo_dims
        )));
    }
    let qa = QuotientAlgebra { alg, rad };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut queue = vec![rad.reduce(&alg.one())];
    let mut primitive = Vec::new();
    while let Some(e) = queue.pop() {
        if qa.corner_dim(&e) == 1 {
            primitive.push(e);
            continue;
        }
        let mut pieces = None;
        for _ in 0..SPLIT_ATTEMPTS {
            if let Some(p) = qa.try_split(&e, &mut rng)? {
                pieces = Some(p);
                break;
            }
        }
        match pieces {
            Some(p) => queue.extend(p),
            None => {
                return Err(Error::SplitStall(format!(
                    "no splitting element after {SPLIT_ATTEMPTS} tries"
                )))
            }
        }
    }

    let mut tagged = Vec::with_capacity(primitive.len());
    for e in primitive {
        let hits: Vec<usize> = simples
            .simples
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.act(&e).is_zero())
            .map(|(i, _)| i)
            .collect();
        if hits.len() != 1 {
            return Err(Error::SplitStall(format!(
                "primitive idempotent acts on {} simples",
                hits.len()
            )));
        }
        tagged.push((hits[0], e));
    }
    tagged.sort_by_key(|(i, _)| *i);
    for (i, s) in simples.simples.iter().enumerate() {
        let count = tagged.iter().filter(|(j, _)| *j == i).count();
        if count != s.dim() {
            return Err(Error::SplitStall(format!(
                "{count} idempotents for a simple of dimension {}",
                s.dim()
            )));
        }
    }

    let one = alg.one();
    let mut lifted: Vec<AlgebraElem> = Vec::with_capacity(tagged.len());
    let mut rest = one.clone();
    for (k, (_, a)) in tagged.iter().enumerate() {
        let f = if k + 1 == tagged.len() {
            rest.clone()
        } else {
            let squeezed = alg.mul(&alg.mul(&rest, a), &rest);
            lift_idempotent(alg, &squeezed, rad)?
        };
        rest = alg.sub(&rest, &f);
        lifted.push(f);
    }

    let regular = regular_module(alg);
    let mut pims = Vec::with_capacity(lifted.len());
    for (f, (i, _)) in lifted.iter().zip(&tagged) {
        let span = spin(&regular, &[f.0.clone()])?;
        let (p, _) = sub_quotient(&regular, &span)?;
        pims.push(p.with_label(format!("P{}", i + 1)));
    }
    Ok(Decomposition {
        idempotents: lifted,
        simple_of: tagged.into_iter().map(|(i, _)| i).collect(),
        pims,
    })
}

/// The Cartan matrix two ways: `dim Hom(P_i, P_j)` and the multiplicity of
/// `S_i` among the composition factors of `P_j`.
pub fn cartan_routes(
    simples: &SimpleSet,
    decomp: &Decomposition,
    seed: u64,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let n = simples.len();
    let mut hom = vec![vec![0; n]; n];
    for (i, row) in hom.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = hom_dim(decomp.pim(i), decomp.pim(j))? / simples.endo_dims[i];
        }
    }
    let mut chop = vec![vec![0; n]; n];
    for j in 0..n {
        let mult = composition_multiplicities(decomp.pim(j), &simples.simples, seed ^ j as u64)?;
        for (i, c) in mult.into_iter().enumerate() {
            chop[i][j] = c;
        }
    }
    Ok((hom, chop))
}

/// Both routes, which must agree. `perturb` corrupts the second route, for
/// exercising the disagreement path.
pub fn cartan_matrix_checked(
    simples: &SimpleSet,
    decomp: &Decomposition,
    seed: u64,
    perturb: bool,
) -> Result<Vec<Vec<usize>>> {
    let (hom, mut chop) = cartan_routes(simples, decomp, seed)?;
    if perturb {
        chop[0][0] += 1;
    }
    if hom != chop {
        return Err(Error::MethodDisagreement { hom, chop });
    }
    Ok(hom)
}

pub fn cartan_matrix(
    simples: &SimpleSet,
    decomp: &Decomposition,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    cartan_matrix_checked(simples, decomp, seed, false)
}

#[derive(Clone, Debug)]
pub struct PimReport {
    pub simple: usize,
    pub dim: usize,
    pub loewy: LoewyData,
    /// the head is a single copy of this simple
    pub head: Option<usize>,
    /// the socle is a single copy of this simple
    pub socle: Option<usize>,
    pub dim_divisible_by_p_part: bool,
    /// index of `S*`
    pub dual_simple: usize,
    /// `P_S* ≅ P_{S*}`
    pub dual_pim_matches: bool,
}

fn single(mults: &[usize]) -> Option<usize> {
    let nonzero: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] > 0).collect();
    (nonzero.len() == 1 && mults[nonzero[0]] == 1).then(|| nonzero[0])
}

/// Loewy structure and the standard sanity properties of each `P_S`.
pub fn pim_structure_report(
    simples: &SimpleSet,
    rad: &Radical,
    decomp: &Decomposition,
    seed: u64,
) -> Result<Vec<PimReport>> {
    let mut out = Vec::with_capacity(simples.len());
    for (i, s) in simples.simples.iter().enumerate() {
        let p = decomp.pim(i);
        let loewy = radical_and_socle_series(p, rad, simples)?;
        let head = loewy.head().and_then(|l| single(&l.multiplicities));
        let socle = loewy.socle_layer().and_then(|l| single(&l.multiplicities));
        let p_part = p.group().p_part(p.field().characteristic());
        let dual_simple = simples.index_of(&dual(s))?.ok_or_else(|| {
            Error::IncompleteSimpleSet(format!("dual of S{} is not among the simples", i + 1))
        })?;
        let dual_pim_matches = is_isomorphic(&dual(p), decomp.pim(dual_simple), seed ^ i as u64)?;
        out.push(PimReport {
            simple: i,
            dim: p.dim(),
            loewy,
            head,
            socle,
            dim_divisible_by_p_part: p.dim() % p_part == 0,
            dual_simple,
            dual_pim_matches,
        });
    }
    Ok(out)
}
