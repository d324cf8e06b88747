//! Radical and socle series of a module, with the simple constituents of
//! each layer.

use crate::error::Result;
use crate::field::FieldElem;
use crate::linalg::{Echelon, Mat, Subspace};
use crate::module::{hom_dim, section, Module};
use crate::structure::{Radical, SimpleSet};

#[derive(Clone, Debug)]
pub struct Layer {
    pub module: Module,
    /// multiplicity of each simple of the [`SimpleSet`], by index
    pub multiplicities: Vec<usize>,
}

impl Layer {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

#[derive(Clone, Debug)]
pub struct LoewyData {
    /// `M = rad⁰M ⊋ radM ⊋ … ⊋ 0`, all terms including both ends
    pub radical: Vec<Subspace>,
    /// `rad^i M / rad^{i+1} M`, head first
    pub radical_layers: Vec<Layer>,
    /// `0 = soc⁰M ⊊ socM ⊊ … ⊊ M`
    pub socle: Vec<Subspace>,
    /// `soc^{i+1} M / soc^i M`, socle first
    pub socle_layers: Vec<Layer>,
}

impl LoewyData {
    pub fn loewy_length(&self) -> usize {
        self.radical_layers.len()
    }

    pub fn head(&self) -> Option<&Layer> {
        self.radical_layers.first()
    }

    pub fn socle_layer(&self) -> Option<&Layer> {
        self.socle_layers.first()
    }
}

/// Matrices of a basis of the Jacobson radical acting on `m`.
pub fn radical_action(m: &Module, rad: &Radical) -> Vec<Mat> {
    (0..rad.space.dim())
        .map(|i| {
            let r = crate::module::AlgebraElem(rad.space.basis().row(i).to_vec());
            m.act(&r)
        })
        .filter(|a| !a.is_zero())
        .collect()
}

/// Multiplicities of the simples in a semisimple module.
pub fn layer_multiplicities(layer: &Module, simples: &SimpleSet) -> Result<Vec<usize>> {
    simples
        .simples
        .iter()
        .zip(&simples.endo_dims)
        .map(|(s, &e)| Ok(hom_dim(s, layer)? / e))
        .collect()
}

pub fn radical_and_socle_series(
    m: &Module,
    rad: &Radical,
    simples: &SimpleSet,
) -> Result<LoewyData> {
    let f = m.field();
    let n = m.dim();
    let acts = radical_action(m, rad);

    let mut radical = vec![Subspace::full(f, n)];
    loop {
        let cur = radical.last().expect("non-empty");
        if cur.is_zero() {
            break;
        }
        let mut ech = Echelon::new(f, n);
        for a in &acts {
            for v in cur.vectors() {
                ech.insert(&a.mul_vec(&v));
            }
        }
        radical.push(ech.into_subspace());
    }

    let mut socle = vec![Subspace::zero(f, n)];
    loop {
        let cur = socle.last().expect("non-empty");
        if cur.is_full() {
            break;
        }
        // v ∈ next  ⇔  r v ∈ cur for every radical element r
        let np = cur.non_pivots();
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for a in &acts {
            let cols: Vec<Vec<FieldElem>> =
                (0..n).map(|j| cur.quotient_coords(&a.column(j))).collect();
            for k in 0..np.len() {
                rows.push(cols.iter().map(|c| c[k]).collect());
            }
        }
        let next = if rows.is_empty() {
            Subspace::full(f, n)
        } else {
            Subspace::from_rows(&Mat::from_rows(f, n, &rows).nullspace())
        };
        socle.push(next);
    }

    let mut radical_layers = Vec::new();
    for w in radical.windows(2) {
        let module = section(m, &w[0], &w[1])?;
        let multiplicities = layer_multiplicities(&module, simples)?;
        radical_layers.push(Layer {
            module,
            multiplicities,
        });
    }
    let mut socle_layers = Vec::new();
    for w in socle.windows(2) {
        let module = section(m, &w[1], &w[0])?;
        let multiplicities = layer_multiplicities(&module, simples)?;
        socle_layers.push(Layer {
            module,
            multiplicities,
        });
    }
    Ok(LoewyData {
        radical,
        radical_layers,
        socle,
        socle_layers,
    })
}

/// `S1 | S2+S3 | S1`, head first.
pub fn layer_diagram(layers: &[Layer], labels: &[String]) -> String {
    layers
        .iter()
        .map(|l| {
            let mut parts = Vec::new();
            for (i, &c) in l.multiplicities.iter().enumerate() {
                for _ in 0..c {
                    parts.push(labels[i].clone());
                }
            }
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join("+")
            }
        })
        .collect::<Vec<_>>()
        .join(" | ")
}
