//! Reproduction suites: golden values for the Klein four, cyclic, A4 and A5
//! algebras in characteristic 2, randomized invariants, and micro-scale
//! oracle comparisons.
//!
//! Every check is a named pass/fail line tagged with the acceptance
//! criterion it belongs to. Pipeline errors inside a criterion become a
//! failed check rather than aborting the suite.

use std::collections::HashMap;
use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{analyze, transpose, Analysis, AnalysisOptions, Fault};
use crate::blocks::block_partition;
use crate::blocks::{cyclic_idempotents, module_block_assignment, BlockAssignment};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::{Mat, Subspace};
use crate::loewy::{layer_diagram, radical_and_socle_series, Layer, LoewyData};
use crate::meataxe::composition_multiplicities;
use crate::module::{
    direct_sum, hom_dim, induce, inflate, is_isomorphic, permutation_module, regular_module,
    restrict, section, spin, sub_quotient, AlgebraElem, GroupAlgebra, Module,
};
use crate::perm::{builtin, cosets_and_quotient, normal_p_core, Group, Perm, Subgroup};
use crate::structure::{
    cartan_routes, find_simples, jacobson_radical, lift_idempotent, primitive_decomposition,
    SimpleSet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl CheckOptions {
    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions {
            seed: self.seed,
            fault: self.fault,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Paper,
    Properties,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Paper => &[1, 2, 3, 4, 5],
            Suite::Properties => &[6, 7],
        }
    }
}

struct Ledger {
    criterion: u8,
    checks: Vec<Check>,
}

impl Ledger {
    fn new(criterion: u8) -> Ledger {
        Ledger {
            criterion,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            criterion: self.criterion,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        let detail = if pass {
            format!("{got:?}")
        } else {
            format!("got {got:?}, expected {want:?}")
        };
        self.check(name, pass, detail);
    }

    fn error(&mut self, e: Error) {
        self.check("pipeline", false, e.to_string());
    }
}

pub fn run_criterion(n: u8, opts: &CheckOptions) -> Vec<Check> {
    let mut l = Ledger::new(n);
    let outcome = match n {
        1 => klein_four(&mut l, opts),
        2 => cyclic(&mut l, opts),
        3 => alternating_four(&mut l, opts),
        4 => alternating_five(&mut l, opts),
        5 => induction(&mut l, opts),
        6 => properties(&mut l, opts.seed),
        7 => oracles(&mut l, opts.seed),
        _ => Err(Error::Parse(format!("no criterion {n}"))),
    };
    if let Err(e) = outcome {
        l.error(e);
    }
    l.checks
}

pub fn run_suite(suite: Suite, opts: &CheckOptions) -> Vec<Check> {
    suite
        .criteria()
        .iter()
        .flat_map(|&n| run_criterion(n, opts))
        .collect()
}

fn algebra(name: &str, p: u32, k: u32) -> Result<GroupAlgebra> {
    Ok(GroupAlgebra::new(&builtin(name)?, &Field::new(p, k, None)?))
}

fn certificates_pass(l: &mut Ledger, tag: &str, a: &Analysis) {
    let failed: Vec<&str> = a
        .certificates
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    l.check(
        format!("{tag} certificates"),
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} pass", a.certificates.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    );
}

/// Layer diagram with the summands of each layer sorted by label, so the
/// rendering does not depend on the internal order of the simples.
fn diagram(layers: &[Layer], names: &[String]) -> String {
    layer_diagram(layers, names)
        .split(" | ")
        .map(|layer| {
            let mut parts: Vec<&str> = layer.split('+').collect();
            parts.sort_unstable();
            parts.join("+")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn layer_dims(loewy: &LoewyData) -> Vec<usize> {
    loewy.radical_layers.iter().map(|l| l.dim()).collect()
}

/// Reorder a matrix indexed by simples into the order `perm` (new index →
/// old index).
fn reorder(c: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    perm.iter()
        .map(|&i| perm.iter().map(|&j| c[i][j]).collect())
        .collect()
}

/// Every element of kG, for tiny algebras.
fn all_elements(alg: &GroupAlgebra) -> Vec<AlgebraElem> {
    let q = alg.field().order() as u64;
    let n = alg.dim() as u32;
    (0..q.pow(n))
        .map(|mut code| {
            AlgebraElem(
                (0..n)
                    .map(|_| {
                        let c = FieldElem((code % q) as u32);
                        code /= q;
                        c
                    })
                    .collect(),
            )
        })
        .collect()
}

fn klein_four(l: &mut Ledger, opts: &CheckOptions) -> Result<()> {
    let alg = algebra("V4", 2, 1)?;
    let a = analyze(&alg, &opts.analysis())?;
    certificates_pass(l, "V4", &a);
    l.eq("V4 simple dims", a.simples.dims(), vec![1]);
    l.eq("V4 PIM dims", a.pim_dims(), vec![4]);
    l.eq(
        "V4 unique idempotent is 1",
        a.decomposition.idempotents.clone(),
        vec![alg.one()],
    );
    l.eq(
        "V4 Loewy layer dims",
        layer_dims(&a.pims[0].loewy),
        vec![1, 2, 1],
    );
    l.eq("V4 Cartan", a.cartan.clone(), vec![vec![4]]);
    l.eq("V4 blocks", a.blocks.len(), 1);
    let idems: Vec<AlgebraElem> = all_elements(&alg)
        .into_iter()
        .filter(|x| alg.is_idempotent(x))
        .collect();
    l.eq("V4 all idempotents", idems, vec![alg.zero(), alg.one()]);
    // rad = span{X, Y, XY} with X = 1 - a, Y = 1 - b
    let g = alg.group();
    let gens = g.generators();
    let x = alg.sub(&alg.one(), &alg.basis(gens[0]));
    let y = alg.sub(&alg.one(), &alg.basis(gens[1]));
    let xy = alg.mul(&x, &y);
    let span = Subspace::span(alg.field(), 4, &[x.0, y.0, xy.0]);
    l.eq("V4 radical is <X, Y, XY>", a.radical.space == span, true);
    Ok(())
}

fn cyclic(l: &mut Ledger, opts: &CheckOptions) -> Result<()> {
    for (name, p, len) in [("C2", 2, 2), ("C4", 2, 4), ("C5", 5, 5)] {
        let alg = algebra(name, p, 1)?;
        let a = analyze(&alg, &opts.analysis())?;
        certificates_pass(l, name, &a);
        let layers = &a.regular.radical_layers;
        l.eq(format!("{name} Loewy length"), layers.len(), len);
        let trivial = layers
            .iter()
            .all(|layer| layer.dim() == 1 && layer.multiplicities == vec![1]);
        l.check(format!("{name} layers trivial and uniserial"), trivial, "");
        let x = alg.sub(&alg.one(), &alg.basis(alg.group().generators()[0]));
        let mut power = x.clone();
        let mut degree = 1;
        while !power.is_zero() && degree <= alg.dim() {
            power = alg.mul(&power, &x);
            degree += 1;
        }
        l.eq(format!("{name} nilpotency of 1-g"), degree, alg.dim());
    }
    Ok(())
}

/// T1, T2, T3 of A4 by inflation from A4/V4: the image of (1,2,3) acts by
/// 1, ω, ω².
fn a4_references(alg: &GroupAlgebra) -> Result<Vec<Module>> {
    let g = alg.group();
    let f = alg.field();
    let q = cosets_and_quotient(g, &normal_p_core(g, 2))?
        .quotient
        .ok_or_else(|| Error::NoQuotientRecorded("V4 is normal in A4".into()))?;
    let qalg = GroupAlgebra::new(&q.group, f);
    let omega = f.generator();
    let c = g
        .index_of(&Perm::parse("(1,2,3)", g.degree())?)
        .ok_or_else(|| Error::NotSubgroup("(1,2,3)".into()))?;
    let c_bar = q.projection[c];
    let mut out = Vec::new();
    for (i, value) in [FieldElem::ONE, omega, f.mul(omega, omega)]
        .into_iter()
        .enumerate()
    {
        // quotient generators may repeat or be trivial; pick each scalar as
        // the power of `value` matching the generator's image
        let values = q
            .group
            .generators()
            .iter()
            .map(|&s| {
                let mut x = 0;
                let mut k = 0;
                while x != s {
                    x = q.group.mul(c_bar, x);
                    k += 1;
                }
                f.pow(value, k)
            })
            .collect::<Vec<_>>();
        let t = Module::linear_character(&qalg, &values, None)?;
        out.push(inflate(&t, g, &q)?.with_label(format!("T{}", i + 1)));
    }
    Ok(out)
}

/// Simple index of each reference module.
fn match_simples(simples: &SimpleSet, refs: &[Module]) -> Result<Vec<usize>> {
    refs.iter()
        .map(|r| {
            simples.index_of(r)?.ok_or_else(|| {
                Error::IncompleteSimpleSet(format!("{} not found", r.label().unwrap_or("?")))
            })
        })
        .collect()
}

/// Labels indexed by simple, from a permutation listing the simple behind
/// each conventional name.
fn names_from(perm: &[usize], prefix: &str) -> Vec<String> {
    let mut names = vec![String::new(); perm.len()];
    for (named, &ours) in perm.iter().enumerate() {
        names[ours] = format!("{prefix}{}", named + 1);
    }
    names
}

struct A4Context {
    analysis: Analysis,
    refs: Vec<Module>,
    /// conventional index → simple index
    perm: Vec<usize>,
    names: Vec<String>,
}

fn a4_context(opts: &CheckOptions) -> Result<A4Context> {
    let alg = algebra("A4", 2, 2)?;
    let analysis = analyze(&alg, &opts.analysis())?;
    let refs = a4_references(&alg)?;
    let perm = match_simples(&analysis.simples, &refs)?;
    let names = names_from(&perm, "T");
    Ok(A4Context {
        analysis,
        refs,
        perm,
        names,
    })
}

fn alternating_four(l: &mut Ledger, opts: &CheckOptions) -> Result<()> {
    let ctx = a4_context(opts)?;
    let a = &ctx.analysis;
    let alg = &a.algebra;
    let f = alg.field();
    certificates_pass(l, "A4", a);
    l.eq("A4 simple dims", a.simples.dims(), vec![1, 1, 1]);
    l.eq(
        "A4 simples = 2-regular classes",
        (a.simples.len(), a.simples.p_regular_classes),
        (3, 3),
    );
    l.eq("A4 PIM dims", a.pim_dims(), vec![4, 4, 4]);
    for (i, &s) in ctx.perm.iter().enumerate() {
        let others: Vec<String> = (1..=3)
            .filter(|&j| j != i + 1)
            .map(|j| format!("T{j}"))
            .collect();
        let want = format!("T{0} | {1} | T{0}", i + 1, others.join("+"));
        let got = diagram(&a.pims[s].loewy.radical_layers, &ctx.names);
        l.eq(format!("A4 Q{} layers", i + 1), got, want);
    }
    l.eq(
        "A4 Cartan",
        reorder(&a.cartan, &ctx.perm),
        vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]],
    );
    l.eq("A4 blocks", a.blocks.len(), 1);

    // the two-dimensional modules M1..M6: socle is the character of the
    // first diagonal entry, head that of the second
    let w = f.generator();
    let w2 = f.mul(w, w);
    let one = FieldElem::ONE;
    let two_dim = [
        ("M1", w, w2, "T3 | T2"),
        ("M2", w2, w, "T2 | T3"),
        ("M3", one, w, "T2 | T1"),
        ("M4", w, one, "T1 | T2"),
        ("M5", w2, one, "T1 | T3"),
        ("M6", one, w2, "T3 | T1"),
    ];
    for (name, x, y, want) in two_dim {
        let gens = vec![
            Mat::from_elems(f, 2, 2, vec![x, FieldElem::ZERO, FieldElem::ZERO, y]),
            Mat::from_elems(f, 2, 2, vec![one, w, FieldElem::ZERO, one]),
        ];
        match Module::new(alg, gens, Some(name.into())) {
            Ok(m) => {
                let loewy = radical_and_socle_series(&m, &a.radical, &a.simples)?;
                l.eq(
                    format!("A4 {name} radical series"),
                    diagram(&loewy.radical_layers, &ctx.names),
                    want.to_string(),
                );
            }
            Err(e) => l.check(format!("A4 {name} extends to A4"), false, e.to_string()),
        }
    }

    // character-formula idempotents of <(1,2,3)>
    let g = alg.group();
    let c = g
        .index_of(&Perm::parse("(1,2,3)", 5)?)
        .ok_or_else(|| Error::NotSubgroup("(1,2,3)".into()))?;
    let c2 = g.mul(c, c);
    let es = cyclic_idempotents(&Subgroup::generated_by(g, &[c]), f)?;
    let coeffs: Vec<(u32, u32, u32)> = es.iter().map(|e| (e.0[0].0, e.0[c].0, e.0[c2].0)).collect();
    l.eq(
        "A4 e1, e2, e3 coefficients on (), (1,2,3), (1,3,2)",
        coeffs,
        vec![(1, 1, 1), (1, 2, 3), (1, 3, 2)],
    );
    let support_ok = es.iter().all(|e| {
        e.0.iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || i == 0 || i == c || i == c2)
    });
    l.check("A4 e_i supported on <(1,2,3)>", support_ok, "");
    let regular = regular_module(alg);
    let spun: Vec<Module> = es
        .iter()
        .map(|e| Ok(sub_quotient(&regular, &spin(&regular, &[e.0.clone()])?)?.0))
        .collect::<Result<_>>()?;
    let qs: Vec<&Module> = ctx.perm.iter().map(|&s| a.decomposition.pim(s)).collect();
    // kA4·e_i has head T_j exactly when e_i acts nonzero on T_j
    let mut matched = Vec::new();
    for (i, m) in spun.iter().enumerate() {
        let mut hit = None;
        for (j, q) in qs.iter().enumerate() {
            if is_isomorphic(m, q, opts.seed)? {
                hit = Some(j + 1);
            }
        }
        l.check(
            format!("A4 kA4.e{} is a PIM", i + 1),
            hit.is_some(),
            format!(
                "isomorphic to Q{}",
                hit.map_or("?".into(), |j| j.to_string())
            ),
        );
        matched.push(hit);
    }
    let mut sorted: Vec<Option<usize>> = matched.clone();
    sorted.sort();
    l.eq(
        "A4 {kA4.e_i} = {Q1, Q2, Q3}",
        sorted,
        vec![Some(1), Some(2), Some(3)],
    );
    l.eq(
        "A4 kA4.e_i matches Q_i with Q2, Q3 exchanged",
        matched,
        vec![Some(1), Some(3), Some(2)],
    );
    Ok(())
}

struct A5Context {
    analysis: Analysis,
    a4: A4Context,
    perm: Vec<usize>,
    names: Vec<String>,
}

/// Conventional labels for the A5 simples: S1 trivial, S4 the 4-dimensional one,
/// S2 the 2-dimensional one whose restriction to A4 has head T2.
fn a5_context(opts: &CheckOptions) -> Result<A5Context> {
    let a4 = a4_context(opts)?;
    let alg = algebra("A5", 2, 2)?;
    let analysis = analyze(&alg, &opts.analysis())?;
    let simples = &analysis.simples;
    let h = a4.analysis.algebra.group();
    let t2 = &a4.refs[1];
    let mut perm = vec![usize::MAX; 4];
    perm[0] = simples.trivial_index();
    for (i, s) in simples.simples.iter().enumerate() {
        match s.dim() {
            4 => perm[3] = i,
            2 => {
                if hom_dim(&restrict(s, h)?, t2)? > 0 {
                    perm[1] = i;
                } else {
                    perm[2] = i;
                }
            }
            _ => {}
        }
    }
    if perm.contains(&usize::MAX) || simples.len() != 4 {
        return Err(Error::IncompleteSimpleSet(format!(
            "A5 simples have dims {:?}",
            simples.dims()
        )));
    }
    let names = names_from(&perm, "S");
    Ok(A5Context {
        analysis,
        a4,
        perm,
        names,
    })
}

fn alternating_five(l: &mut Ledger, opts: &CheckOptions) -> Result<()> {
    let ctx = a5_context(opts)?;
    let a = &ctx.analysis;
    let alg = &a.algebra;
    let perm = &ctx.perm;
    certificates_pass(l, "A5", a);
    let dims = a.simples.dims();
    l.eq(
        "A5 simple dims",
        perm.iter().map(|&i| dims[i]).collect::<Vec<_>>(),
        vec![1, 2, 2, 4],
    );
    let pim_dims = a.pim_dims();
    l.eq(
        "A5 PIM dims",
        perm.iter().map(|&i| pim_dims[i]).collect::<Vec<_>>(),
        vec![12, 8, 8, 4],
    );
    let mults = a.pim_multiplicities();
    l.eq(
        "A5 PIM multiplicities in kA5",
        perm.iter().map(|&i| mults[i]).collect::<Vec<_>>(),
        vec![1, 2, 2, 4],
    );
    let pim_layers = |i: usize| diagram(&a.pims[perm[i]].loewy.radical_layers, &ctx.names);
    l.eq(
        "A5 P1 layers",
        pim_layers(0),
        "S1 | S2+S3 | S1+S1 | S2+S3 | S1".to_string(),
    );
    l.eq(
        "A5 P2 layers",
        pim_layers(1),
        "S2 | S1 | S3 | S1 | S2".to_string(),
    );
    l.eq(
        "A5 P3 layers",
        pim_layers(2),
        "S3 | S1 | S2 | S1 | S3".to_string(),
    );
    l.eq("A5 P4 layers", pim_layers(3), "S4".to_string());
    let p4 = a.decomposition.pim(perm[3]);
    l.check(
        "A5 P4 = S4",
        is_isomorphic(p4, &a.simples.simples[perm[3]], opts.seed)?,
        "simple projective",
    );

    // rad P1 / soc P1 against the induced modules
    let p1 = a.decomposition.pim(perm[0]);
    let loewy = &a.pims[perm[0]].loewy;
    let middle = section(p1, &loewy.radical[1], &loewy.socle[1])?;
    let g = alg.group();
    let t2 = induce(&ctx.a4.refs[1], g)?;
    let t3 = induce(&ctx.a4.refs[2], g)?;
    let sum = direct_sum(&[&t2, &t3])?;
    l.check(
        "A5 rad P1/soc P1 = T2^A5 + T3^A5",
        is_isomorphic(&middle, &sum, opts.seed)?,
        format!("dim {}", middle.dim()),
    );

    l.eq(
        "A5 Cartan",
        reorder(&a.cartan, perm),
        vec![
            vec![4, 2, 2, 0],
            vec![2, 2, 1, 0],
            vec![2, 1, 2, 0],
            vec![0, 0, 0, 1],
        ],
    );
    l.eq("A5 blocks", a.blocks.len(), 2);
    let mut principal: Vec<String> = a.blocks.parts[a.blocks.principal]
        .iter()
        .map(|&i| ctx.names[i].clone())
        .collect();
    principal.sort();
    l.eq(
        "A5 principal block",
        principal,
        vec!["S1".to_string(), "S2".into(), "S3".into()],
    );
    let other = 1 - a.blocks.principal;
    l.eq(
        "A5 block dims (principal, other)",
        (a.block_dims[a.blocks.principal], a.block_dims[other]),
        (44, 16),
    );
    let trivial = Module::trivial(alg);
    l.eq(
        "A5 trivial module block",
        module_block_assignment(&trivial, &a.blocks)?,
        BlockAssignment::Single(a.blocks.principal),
    );
    l.eq(
        "A5 S4 block",
        module_block_assignment(&a.simples.simples[perm[3]], &a.blocks)?,
        BlockAssignment::Single(other),
    );
    let mut split = match module_block_assignment(&regular_module(alg), &a.blocks)? {
        BlockAssignment::Split(parts) => parts.into_iter().map(|(_, d)| d).collect(),
        BlockAssignment::Single(_) => vec![],
    };
    split.sort_unstable();
    l.eq("A5 regular module splits", split, vec![16, 44]);
    Ok(())
}

fn induction(l: &mut Ledger, opts: &CheckOptions) -> Result<()> {
    let ctx = a5_context(opts)?;
    let a = &ctx.analysis;
    let a4 = &ctx.a4;
    let g = a.algebra.group();
    let h = a4.analysis.algebra.group();
    let s = |i: usize| &a.simples.simples[ctx.perm[i]];

    for (i, want) in [(1, "S3 | S1 | S2"), (2, "S2 | S1 | S3")] {
        let ind = induce(&a4.refs[i], g)?;
        l.eq(format!("T{}^A5 dim", i + 1), ind.dim(), 5);
        let loewy = radical_and_socle_series(&ind, &a.radical, &a.simples)?;
        l.eq(
            format!("T{}^A5 layers", i + 1),
            diagram(&loewy.radical_layers, &ctx.names),
            want.to_string(),
        );
    }
    let t1 = induce(&a4.refs[0], g)?;
    let s1s4 = direct_sum(&[s(0), s(3)])?;
    l.check("T1^A5 = S1 + S4", is_isomorphic(&t1, &s1s4, opts.seed)?, "");
    let w = permutation_module(&a.algebra);
    l.check("T1^A5 = W", is_isomorphic(&t1, &w, opts.seed)?, "");

    let restricted = |i: usize| -> Result<LoewyData> {
        let r = restrict(s(i), h)?;
        radical_and_socle_series(&r, &a4.analysis.radical, &a4.analysis.simples)
    };
    for (i, want) in [(1, "T2 | T3"), (2, "T3 | T2"), (0, "T1")] {
        let loewy = restricted(i)?;
        l.eq(
            format!("(S{})_A4 layers", i + 1),
            diagram(&loewy.radical_layers, &a4.names),
            want.to_string(),
        );
    }
    // (S4)_A4 meets only T1: its head and socle are T1
    let s4 = restricted(3)?;
    let head = s4
        .head()
        .map(|x| diagram(std::slice::from_ref(x), &a4.names));
    let soc = s4
        .socle_layer()
        .map(|x| diagram(std::slice::from_ref(x), &a4.names));
    l.eq("(S4)_A4 head", head, Some("T1".to_string()));
    l.eq("(S4)_A4 socle", soc, Some("T1".to_string()));
    Ok(())
}

/// Algebras run through the full pipeline by the property suite.
const PROPERTY_ALGEBRAS: &[(&str, u32, u32)] = &[
    ("V4", 2, 1),
    ("C2", 2, 1),
    ("C3", 3, 1),
    ("C4", 2, 1),
    ("C5", 5, 1),
    ("S3", 3, 1),
    ("S3", 2, 1),
    ("S4", 2, 1),
    ("S4", 3, 1),
    ("A4", 2, 2),
    ("A5", 2, 2),
];

const MASCHKE_CASES: &[(&str, u32, u32)] = &[
    ("C3", 2, 2),
    ("C5", 2, 1),
    ("S3", 5, 1),
    ("A5", 7, 1),
    ("A4", 2, 1),
];

fn properties(l: &mut Ledger, seed: u64) -> Result<()> {
    let opts = AnalysisOptions { seed, fault: None };
    for &(name, p, k) in PROPERTY_ALGEBRAS {
        let alg = algebra(name, p, k)?;
        let tag = format!("{name}/{}", alg.field());
        let a = analyze(&alg, &opts)?;
        for c in &a.certificates {
            l.check(format!("{tag} {}", c.name), c.passed(), c.detail.clone());
        }
        let layers_ok = a.pims.iter().all(|p| {
            p.loewy
                .radical_layers
                .iter()
                .chain(&p.loewy.socle_layers)
                .all(|layer| {
                    layer
                        .multiplicities
                        .iter()
                        .zip(a.simples.dims())
                        .map(|(m, d)| m * d)
                        .sum::<usize>()
                        == layer.dim()
                })
        });
        l.check(format!("{tag} semisimple layer dims"), layers_ok, "");
        let group = alg.group();
        if group.is_p_group(p) {
            l.eq(
                format!("{tag} p-group: one simple, idempotent 1"),
                (a.simples.len(), a.decomposition.idempotents.clone()),
                (1, vec![alg.one()]),
            );
        }
        if group.is_p_group(p) && group.generators().len() == 1 {
            let uniserial = a.regular.radical_layers.len() == group.order();
            l.check(format!("{tag} cyclic p-group uniserial"), uniserial, "");
        }
        // composition factors do not depend on the seed
        let regular = regular_module(&alg);
        let base = composition_multiplicities(&regular, &a.simples.simples, seed)?;
        let mut stable = true;
        for s in 1..5 {
            let other =
                composition_multiplicities(&regular, &a.simples.simples, seed.wrapping_add(s))?;
            stable &= other == base;
        }
        l.check(
            format!("{tag} composition factors seed-invariant"),
            stable,
            format!("{base:?}"),
        );
        // reversing the simple order gives the same blocks
        let mut reversed = a.simples.clone();
        reversed.simples.reverse();
        reversed.endo_dims.reverse();
        let rd = primitive_decomposition(&alg, &reversed, &a.radical, seed)?;
        let (rc, _) = cartan_routes(&reversed, &rd, seed)?;
        let n = reversed.len();
        let rb = block_partition(&alg, &rc, &rd, n - 1 - a.simples.trivial_index())?;
        let mut back: Vec<Vec<usize>> = rb
            .parts
            .iter()
            .map(|p| {
                let mut v: Vec<usize> = p.iter().map(|&i| n - 1 - i).collect();
                v.sort_unstable();
                v
            })
            .collect();
        back.sort();
        l.eq(
            format!("{tag} blocks independent of simple order"),
            back,
            a.blocks.parts.clone(),
        );
        l.eq(
            format!("{tag} reversed Cartan"),
            transpose(&transpose(&rc)),
            reorder(&a.cartan, &(0..n).rev().collect::<Vec<_>>()),
        );
    }

    // Frobenius reciprocity between A4 and A5
    let copts = CheckOptions { seed, fault: None };
    let ctx = a5_context(&copts)?;
    let g = ctx.analysis.algebra.group();
    let h = ctx.a4.analysis.algebra.group();
    let mut frob_ok = true;
    let mut detail = Vec::new();
    for (i, t) in ctx.a4.refs.iter().enumerate() {
        let ind = induce(t, g)?;
        l.eq(
            format!("dim T{}^A5 = [A5:A4] dim T{}", i + 1, i + 1),
            ind.dim(),
            5 * t.dim(),
        );
        for (j, s) in ctx.analysis.simples.simples.iter().enumerate() {
            let res = restrict(s, h)?;
            let left = (hom_dim(&ind, s)?, hom_dim(s, &ind)?);
            let right = (hom_dim(t, &res)?, hom_dim(&res, t)?);
            if left != right {
                frob_ok = false;
                detail.push(format!(
                    "T{} {}: {left:?} vs {right:?}",
                    i + 1,
                    ctx.names[j]
                ));
            }
        }
    }
    l.check(
        "Frobenius reciprocity (T_i, S_j)",
        frob_ok,
        detail.join("; "),
    );

    for &(name, p, k) in MASCHKE_CASES {
        let alg = algebra(name, p, k)?;
        let simples = find_simples(&alg, seed)?;
        let rad = jacobson_radical(&alg, &simples)?;
        let coprime = alg.dim() % p as usize != 0;
        l.eq(
            format!(
                "Maschke {name}/{}: rad = 0 iff p does not divide |G|",
                alg.field()
            ),
            rad.dim() == 0,
            coprime,
        );
    }
    Ok(())
}

/// Product in kG computed from permutations directly, without the group
/// table.
fn slow_mul(g: &Group, a: &AlgebraElem, b: &AlgebraElem, f: &Field) -> AlgebraElem {
    let index: HashMap<&Perm, usize> = g
        .elements()
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut out = vec![FieldElem::ZERO; g.order()];
    for (x, &ax) in a.0.iter().enumerate() {
        for (y, &by) in b.0.iter().enumerate() {
            if ax.is_zero() || by.is_zero() {
                continue;
            }
            let k = index[&g.element(x).compose(g.element(y))];
            out[k] = f.add(out[k], f.mul(ax, by));
        }
    }
    AlgebraElem(out)
}

/// Count the matrices commuting with the actions by trying them all.
fn brute_hom_count(v: &Module, w: &Module) -> usize {
    let f = v.field();
    let q = f.order() as u64;
    let cells = v.dim() * w.dim();
    let mut count = 0;
    for mut code in 0..q.pow(cells as u32) {
        let data = (0..cells)
            .map(|_| {
                let c = FieldElem((code % q) as u32);
                code /= q;
                c
            })
            .collect();
        let x = Mat::from_elems(f, w.dim(), v.dim(), data);
        if v.generators()
            .iter()
            .zip(w.generators())
            .all(|(a, b)| x.mul(a) == b.mul(&x))
        {
            count += 1;
        }
    }
    count
}

fn small_modules(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> Result<Vec<Module>> {
    let mut out = vec![Module::trivial(alg)];
    let regular = regular_module(alg);
    if regular.dim() <= 3 {
        out.push(regular.clone());
    }
    let perm = permutation_module(alg);
    if perm.dim() <= 3 {
        out.push(perm);
    }
    for _ in 0..4 {
        let v = alg.random(rng);
        let s = spin(&regular, &[v.0])?;
        let (sub, quot) = sub_quotient(&regular, &s)?;
        for m in [sub, quot] {
            if (1..=3).contains(&m.dim()) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn oracles(l: &mut Ledger, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut compared = 0;
    let mut mismatches = Vec::new();
    for name in ["C2", "C3", "S3", "V4"] {
        let alg = algebra(name, 2, 1)?;
        let mods = small_modules(&alg, &mut rng)?;
        for v in &mods {
            for w in &mods {
                let d = hom_dim(v, w)?;
                let brute = brute_hom_count(v, w);
                compared += 1;
                if 1usize << d != brute {
                    mismatches.push(format!("{name} {}x{}: 2^{d} vs {brute}", v.dim(), w.dim()));
                }
            }
        }
    }
    l.check(
        "hom dimensions over GF(2) match enumeration",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{compared} pairs")
        } else {
            mismatches.join("; ")
        },
    );

    let mut lifted = 0;
    let mut bad = 0;
    for (name, p, k) in [("V4", 2, 1), ("A4", 2, 2), ("S3", 3, 1)] {
        let alg = algebra(name, p, k)?;
        let simples = find_simples(&alg, seed)?;
        let rad = jacobson_radical(&alg, &simples)?;
        let decomp = primitive_decomposition(&alg, &simples, &rad, seed)?;
        for _ in 0..8 {
            let base = &decomp.idempotents[rng.gen_range(0..decomp.idempotents.len())];
            let mut noise = alg.zero();
            for v in rad.space.vectors() {
                let c = FieldElem(rng.gen_range(0..alg.field().order()));
                noise = alg.add(&noise, &alg.scale(&AlgebraElem(v), c));
            }
            let a = alg.add(base, &noise);
            let f = lift_idempotent(&alg, &a, &rad)?;
            lifted += 1;
            let square = slow_mul(alg.group(), &f, &f, alg.field());
            if square != f || !rad.contains(&alg.sub(&f, &a)) {
                bad += 1;
            }
        }
    }
    l.check(
        "lifted idempotents square to themselves",
        bad == 0,
        format!("{lifted} lifts, {bad} failures"),
    );

    let fields = [Field::gf(2, 1), Field::gf(2, 2), Field::gf(5, 1)];
    let mut failures = 0;
    for case in 0..500 {
        let f = &fields[case % fields.len()];
        let n = rng.gen_range(1..=8);
        let random_space = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(0..=n);
            let vecs: Vec<Vec<FieldElem>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| FieldElem(rng.gen_range(0..f.order())))
                        .collect()
                })
                .collect();
            Subspace::span(f, n, &vecs)
        };
        let u = random_space(&mut rng);
        let v = random_space(&mut rng);
        let (sum, int) = u.sum_and_intersection(&v)?;
        let ok = sum.dim() + int.dim() == u.dim() + v.dim()
            && sum.contains_subspace(&u)
            && sum.contains_subspace(&v)
            && u.contains_subspace(&int)
            && v.contains_subspace(&int);
        if !ok {
            failures += 1;
        }
    }
    l.check(
        "subspace sum/intersection dimension formula",
        failures == 0,
        format!("500 cases, {failures} failures"),
    );
    Ok(())
}

pub fn format_check(c: &Check) -> String {
    let status = if c.pass { "PASS" } else { "FAIL" };
    if c.detail.is_empty() {
        format!("[{}] {status} {}", c.criterion, c.name)
    } else {
        format!("[{}] {status} {}: {}", c.criterion, c.name, c.detail)
    }
}
