//! The full structure pipeline for one group algebra, with every
//! verification recorded as a named certificate.

use std::time::Instant;

use serde::Serialize;

use crate::blocks::{block_partition, module_block_summands, BlockPartition};
use crate::error::Result;
use crate::loewy::{radical_and_socle_series, LoewyData};
use crate::module::{is_isomorphic, regular_module, GroupAlgebra};
use crate::structure::{
    cartan_routes, find_simples, jacobson_radical, pim_structure_report, primitive_decomposition,
    Decomposition, PimReport, Radical, SimpleSet,
};

/// Deliberate corruption of one pipeline stage, used to check that failures
/// are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// transpose the Cartan matrix and bump one entry
    Cartan,
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Certificate {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Certificate {
        Certificate {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: GroupAlgebra,
    pub seed: u64,
    pub simples: SimpleSet,
    pub radical: Radical,
    pub decomposition: Decomposition,
    /// via Hom dimensions; this is the reported matrix
    pub cartan: Vec<Vec<usize>>,
    /// via composition factors
    pub cartan_chop: Vec<Vec<usize>>,
    pub pims: Vec<PimReport>,
    pub regular: LoewyData,
    pub blocks: BlockPartition,
    /// `dim e_B·kG` per block
    pub block_dims: Vec<usize>,
    pub certificates: Vec<Certificate>,
    /// stage name and wall time in milliseconds
    pub timings: Vec<(String, f64)>,
}

impl Analysis {
    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }

    /// Number of primitive idempotents belonging to each simple.
    pub fn pim_multiplicities(&self) -> Vec<usize> {
        (0..self.simples.len())
            .map(|i| {
                self.decomposition
                    .simple_of
                    .iter()
                    .filter(|&&s| s == i)
                    .count()
            })
            .collect()
    }

    pub fn pim_dims(&self) -> Vec<usize> {
        self.pims.iter().map(|p| p.dim).collect()
    }
}

struct Clock {
    start: Instant,
    laps: Vec<(String, f64)>,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        let ms = now.duration_since(self.start).as_secs_f64() * 1000.0;
        self.laps.push((name.to_string(), ms));
        self.start = now;
    }
}

pub fn analyze(alg: &GroupAlgebra, opts: &AnalysisOptions) -> Result<Analysis> {
    let seed = opts.seed;
    let mut clock = Clock {
        start: Instant::now(),
        laps: Vec::new(),
    };
    let mut certs = Vec::new();
    let order = alg.dim();

    let simples = find_simples(alg, seed)?;
    certs.push(Certificate::new(
        "simple_count",
        simples.len() == simples.p_regular_classes,
        format!(
            "{} simples, {} p-regular classes",
            simples.len(),
            simples.p_regular_classes
        ),
    ));
    clock.lap("simples");

    let radical = jacobson_radical(alg, &simples)?;
    let wedderburn = order - simples.dims().iter().map(|d| d * d).sum::<usize>();
    certs.push(Certificate::new(
        "radical_dimension",
        radical.dim() == wedderburn,
        format!(
            "dim J = {}, |G| - sum dim(S)^2 = {wedderburn}",
            radical.dim()
        ),
    ));
    clock.lap("radical");

    let decomposition = primitive_decomposition(alg, &simples, &radical, seed)?;
    let fs = &decomposition.idempotents;
    let idempotent = fs.iter().all(|f| alg.is_idempotent(f));
    let orthogonal =
        (0..fs.len()).all(|i| (0..fs.len()).all(|j| i == j || alg.mul(&fs[i], &fs[j]).is_zero()));
    let total = fs.iter().fold(alg.zero(), |acc, f| alg.add(&acc, f));
    certs.push(Certificate::new(
        "idempotents",
        idempotent && orthogonal && total == alg.one(),
        format!(
            "{} idempotents; squares {}, orthogonal {}, sum to 1 {}",
            fs.len(),
            idempotent,
            orthogonal,
            total == alg.one()
        ),
    ));
    clock.lap("idempotents");

    let (mut cartan, cartan_chop) = cartan_routes(&simples, &decomposition, seed)?;
    if opts.fault == Some(Fault::Cartan) {
        cartan = transpose(&cartan);
        let last = cartan.len() - 1;
        cartan[0][last] += 1;
    }
    certs.push(Certificate::new(
        "cartan_methods_agree",
        cartan == cartan_chop,
        format!("hom {cartan:?}, chop {cartan_chop:?}"),
    ));
    certs.push(Certificate::new(
        "cartan_symmetric",
        cartan == transpose(&cartan),
        format!("{cartan:?}"),
    ));
    let dims = simples.dims();
    let pim_dims: Vec<usize> = (0..simples.len())
        .map(|j| decomposition.pim(j).dim())
        .collect();
    let column_ok = (0..simples.len()).all(|j| {
        (0..simples.len())
            .map(|i| cartan[i][j] * dims[i])
            .sum::<usize>()
            == pim_dims[j]
    });
    certs.push(Certificate::new(
        "cartan_columns",
        column_ok,
        format!("sum_i C[i][j] dim S_i against dim P_j = {pim_dims:?}"),
    ));
    let weighted: usize = dims.iter().zip(&pim_dims).map(|(d, p)| d * p).sum();
    certs.push(Certificate::new(
        "dimension_identity",
        weighted == order,
        format!("sum dim S * dim P = {weighted}, |G| = {order}"),
    ));
    clock.lap("cartan");

    let pims = pim_structure_report(&simples, &radical, &decomposition, seed)?;
    let labels = simples.labels();
    for p in &pims {
        let name = format!("P{}", p.simple + 1);
        let s = &labels[p.simple];
        certs.push(Certificate::new(
            format!("{name}_head"),
            p.head == Some(p.simple),
            format!("head {:?}, expected {s}", p.head.map(|h| &labels[h])),
        ));
        certs.push(Certificate::new(
            format!("{name}_socle"),
            p.socle == Some(p.simple),
            format!("socle {:?}, expected {s}", p.socle.map(|h| &labels[h])),
        ));
        let (head, soc) = (p.loewy.head(), p.loewy.socle_layer());
        let iso = match (head, soc) {
            (Some(h), Some(s)) => is_isomorphic(&h.module, &s.module, seed)?,
            _ => false,
        };
        certs.push(Certificate::new(format!("{name}_head_iso_socle"), iso, ""));
        certs.push(Certificate::new(
            format!("{name}_dim_divisible"),
            p.dim_divisible_by_p_part,
            format!(
                "dim {} and |G|_p = {}",
                p.dim,
                alg.group().p_part(alg.field().characteristic())
            ),
        ));
        certs.push(Certificate::new(
            format!("{name}_dual"),
            p.dual_pim_matches,
            format!("dual of {s} is {}", labels[p.dual_simple]),
        ));
    }
    clock.lap("pims");

    let regular_module = regular_module(alg);
    let regular = radical_and_socle_series(&regular_module, &radical, &simples)?;
    let head = regular
        .head()
        .map(|l| l.multiplicities.clone())
        .unwrap_or_default();
    certs.push(Certificate::new(
        "regular_head",
        head == dims,
        format!("head multiplicities {head:?}, simple dims {dims:?}"),
    ));
    clock.lap("regular");

    let blocks = block_partition(alg, &cartan_chop, &decomposition, simples.trivial_index())?;
    let summands = module_block_summands(&regular_module, &blocks)?;
    let mut block_dims = vec![0; blocks.len()];
    for (b, m) in &summands {
        block_dims[*b] = m.dim();
    }
    let es = &blocks.idempotents;
    let block_ok = (0..es.len()).all(|i| {
        alg.is_central(&es[i])
            && alg.is_idempotent(&es[i])
            && (0..es.len()).all(|j| i == j || alg.mul(&es[i], &es[j]).is_zero())
    }) && es.iter().fold(alg.zero(), |acc, e| alg.add(&acc, e)) == alg.one();
    certs.push(Certificate::new(
        "block_idempotents",
        block_ok,
        format!("{} central orthogonal idempotents summing to 1", es.len()),
    ));
    for (b, prim) in blocks.primitive.iter().enumerate() {
        if let Some(ok) = prim {
            certs.push(Certificate::new(
                format!("block{}_primitive", b + 1),
                *ok,
                "no smaller central idempotent in the centre",
            ));
        }
    }
    let pim_blocks_ok = decomposition.pims.iter().all(|p| {
        blocks
            .idempotents
            .iter()
            .filter(|e| !p.act(e).is_zero())
            .count()
            == 1
    });
    certs.push(Certificate::new(
        "pims_in_one_block",
        pim_blocks_ok,
        "each PIM is moved by exactly one block idempotent",
    ));
    clock.lap("blocks");

    Ok(Analysis {
        algebra: alg.clone(),
        seed,
        simples,
        radical,
        decomposition,
        cartan,
        cartan_chop,
        pims,
        regular,
        blocks,
        block_dims,
        certificates: certs,
        timings: clock.laps,
    })
}

pub fn transpose(m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}
