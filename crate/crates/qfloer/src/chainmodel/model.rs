use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Rational;

use super::multiop::MultiOp;
use super::space::GradedSpace;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("no chain complex registered for the pair ({0},{1})")]
    MissingPair(String, String),
    #[error("unknown lagrangian label {0}")]
    MissingLagrangian(String),
    #[error("degree violation in {what}: {detail}")]
    Degree { what: String, detail: String },
    #[error("lagrangian {0} is not equivariant: mu1(c) != phi0(b)")]
    NotEquivariant(String),
    #[error("{0} is not a chain map")]
    NotChainMap(String),
    #[error("invalid model: {0}")]
    Invalid(String),
}

/// Self-Floer data of one Lagrangian: the unit cochain e_L in CF^0(L,L),
/// the dual unit functional e_L^vee on CF^n(L,L), and the equivariant
/// bounding cochain c_L in CF^0(L,L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lagrangian {
    pub e: Vec<Rational>,
    pub e_vee: MultiOp,
    pub c: Vec<Rational>,
}

/// The Floer chain complex of an ordered pair of Lagrangians.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairComplex {
    pub space: GradedSpace,
    pub mu1: MultiOp,
}

/// A complete chain-level model: the closed-string sector with its two
/// differentials and distinguished cochains (e, b, beta), the open-string
/// pair complexes, and every operation tensor. Absent tensors are treated
/// as the zero operation; absent pair complexes are an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainModel {
    pub(super) n: u32,
    pub(super) closed: GradedSpace,
    pub(super) d: MultiOp,
    pub(super) delta: MultiOp,
    pub(super) e: Vec<Rational>,
    pub(super) b: Vec<Rational>,
    pub(super) beta: Vec<Rational>,
    pub(super) lagrangians: BTreeMap<String, Lagrangian>,
    pub(super) pairs: BTreeMap<(String, String), PairComplex>,
    pub(super) mu2: BTreeMap<(String, String, String), MultiOp>,
    pub(super) mu3: BTreeMap<(String, String, String, String), MultiOp>,
    pub(super) phi0: BTreeMap<String, MultiOp>,
    pub(super) phi0_vee: BTreeMap<String, MultiOp>,
    pub(super) phi1: BTreeMap<(String, String), MultiOp>,
    pub(super) phi2: BTreeMap<(String, String, String), MultiOp>,
    pub(super) h_vee: BTreeMap<(String, String), MultiOp>,
    pub(super) k_vee: BTreeMap<String, MultiOp>,
}

impl ChainModel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn closed(&self) -> &GradedSpace {
        &self.closed
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn lagrangian_labels(&self) -> Vec<&str> {
        self.lagrangians.keys().map(String::as_str).collect()
    }

    pub fn pair_keys(&self) -> Vec<(&str, &str)> {
        self.pairs
            .keys()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect()
    }

    pub fn mu3_keys(&self) -> Vec<(&str, &str, &str, &str)> {
        self.mu3
            .keys()
            .map(|(a, b, c, d)| (a.as_str(), b.as_str(), c.as_str(), d.as_str()))
            .collect()
    }

    pub fn lagrangian(&self, l: &str) -> Result<&Lagrangian, ModelError> {
        self.lagrangians
            .get(l)
            .ok_or_else(|| ModelError::MissingLagrangian(l.to_string()))
    }

    pub fn pair(&self, l0: &str, l1: &str) -> Result<&PairComplex, ModelError> {
        self.pairs
            .get(&(l0.to_string(), l1.to_string()))
            .ok_or_else(|| ModelError::MissingPair(l0.to_string(), l1.to_string()))
    }

    pub(super) fn mu2_op(&self, l0: &str, l1: &str, l2: &str) -> Option<&MultiOp> {
        self.mu2
            .get(&(l0.to_string(), l1.to_string(), l2.to_string()))
    }

    pub(super) fn mu3_op(&self, l0: &str, l1: &str, l2: &str, l3: &str) -> Option<&MultiOp> {
        self.mu3.get(&(
            l0.to_string(),
            l1.to_string(),
            l2.to_string(),
            l3.to_string(),
        ))
    }

    pub(super) fn phi0_op(&self, l: &str) -> Option<&MultiOp> {
        self.phi0.get(l)
    }

    pub(super) fn phi0_vee_op(&self, l: &str) -> Option<&MultiOp> {
        self.phi0_vee.get(l)
    }

    pub(super) fn phi1_op(&self, l0: &str, l1: &str) -> Option<&MultiOp> {
        self.phi1.get(&(l0.to_string(), l1.to_string()))
    }

    pub(super) fn phi2_op(&self, l0: &str, l1: &str, l2: &str) -> Option<&MultiOp> {
        self.phi2
            .get(&(l0.to_string(), l1.to_string(), l2.to_string()))
    }

    pub(super) fn h_vee_op(&self, l0: &str, l1: &str) -> Option<&MultiOp> {
        self.h_vee.get(&(l0.to_string(), l1.to_string()))
    }

    pub(super) fn k_vee_op(&self, l: &str) -> Option<&MultiOp> {
        self.k_vee.get(l)
    }

    /// Thaw back into a builder, e.g. to perturb single tensor entries.
    pub fn into_builder(self) -> ChainModelBuilder {
        ChainModelBuilder {
            n: self.n,
            closed: self.closed,
            d: self.d,
            delta: self.delta,
            e: self.e,
            b: self.b,
            beta: self.beta,
            lagrangians: self.lagrangians,
            pairs: self.pairs,
            mu2: self.mu2,
            mu3: self.mu3,
            phi0: self.phi0,
            phi0_vee: self.phi0_vee,
            phi1: self.phi1,
            phi2: self.phi2,
            h_vee: self.h_vee,
            k_vee: self.k_vee,
        }
    }
}

/// Apply an optional arity-1 tensor; absence means the zero operation.
pub(super) fn apply1(op: Option<&MultiOp>, v: &[Rational], out_dim: usize) -> Vec<Rational> {
    match op {
        Some(op) => op.apply(&[v], out_dim),
        None => vec![Rational::zero(); out_dim],
    }
}

pub(super) fn apply2(
    op: Option<&MultiOp>,
    v1: &[Rational],
    v2: &[Rational],
    out_dim: usize,
) -> Vec<Rational> {
    match op {
        Some(op) => op.apply(&[v1, v2], out_dim),
        None => vec![Rational::zero(); out_dim],
    }
}

pub(super) fn apply3(
    op: Option<&MultiOp>,
    v1: &[Rational],
    v2: &[Rational],
    v3: &[Rational],
    out_dim: usize,
) -> Vec<Rational> {
    match op {
        Some(op) => op.apply(&[v1, v2, v3], out_dim),
        None => vec![Rational::zero(); out_dim],
    }
}

/// Mutable assembly state for a ChainModel. Fields are public so tests can
/// perturb single tensor entries; `build` validates everything.
#[derive(Debug, Clone)]
pub struct ChainModelBuilder {
    pub n: u32,
    pub closed: GradedSpace,
    pub d: MultiOp,
    pub delta: MultiOp,
    pub e: Vec<Rational>,
    pub b: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub lagrangians: BTreeMap<String, Lagrangian>,
    pub pairs: BTreeMap<(String, String), PairComplex>,
    pub mu2: BTreeMap<(String, String, String), MultiOp>,
    pub mu3: BTreeMap<(String, String, String, String), MultiOp>,
    pub phi0: BTreeMap<String, MultiOp>,
    pub phi0_vee: BTreeMap<String, MultiOp>,
    pub phi1: BTreeMap<(String, String), MultiOp>,
    pub phi2: BTreeMap<(String, String, String), MultiOp>,
    pub h_vee: BTreeMap<(String, String), MultiOp>,
    pub k_vee: BTreeMap<String, MultiOp>,
}

impl ChainModelBuilder {
    pub fn new(n: u32, closed: GradedSpace) -> Self {
        let dim = closed.dim();
        ChainModelBuilder {
            n,
            closed,
            d: MultiOp::new(1, 1),
            delta: MultiOp::new(1, -1),
            e: vec![Rational::zero(); dim],
            b: vec![Rational::zero(); dim],
            beta: vec![Rational::zero(); dim],
            lagrangians: BTreeMap::new(),
            pairs: BTreeMap::new(),
            mu2: BTreeMap::new(),
            mu3: BTreeMap::new(),
            phi0: BTreeMap::new(),
            phi0_vee: BTreeMap::new(),
            phi1: BTreeMap::new(),
            phi2: BTreeMap::new(),
            h_vee: BTreeMap::new(),
            k_vee: BTreeMap::new(),
        }
    }

    pub fn add_lagrangian(&mut self, label: &str, space: GradedSpace, mu1: MultiOp) {
        let dim = space.dim();
        self.pairs.insert(
            (label.to_string(), label.to_string()),
            PairComplex { space, mu1 },
        );
        self.lagrangians.insert(
            label.to_string(),
            Lagrangian {
                e: vec![Rational::zero(); dim],
                e_vee: MultiOp::new(1, -(self.n as i64)),
                c: vec![Rational::zero(); dim],
            },
        );
    }

    pub fn add_pair(&mut self, l0: &str, l1: &str, space: GradedSpace, mu1: MultiOp) {
        self.pairs
            .insert((l0.to_string(), l1.to_string()), PairComplex { space, mu1 });
    }

    fn pair_space(&self, l0: &str, l1: &str) -> Result<&GradedSpace, ModelError> {
        self.pairs
            .get(&(l0.to_string(), l1.to_string()))
            .map(|p| &p.space)
            .ok_or_else(|| ModelError::MissingPair(l0.to_string(), l1.to_string()))
    }

    fn check_op(
        &self,
        what: &str,
        op: &MultiOp,
        inputs: &[&GradedSpace],
        output: &GradedSpace,
    ) -> Result<(), ModelError> {
        op.validate(inputs, output)
            .map_err(|detail| ModelError::Degree {
                what: what.to_string(),
                detail,
            })
    }

    fn check_pure(
        &self,
        what: &str,
        space: &GradedSpace,
        v: &[Rational],
        deg: i64,
    ) -> Result<(), ModelError> {
        if v.len() != space.dim() {
            return Err(ModelError::Invalid(format!(
                "{what} has {} coordinates, space has dimension {}",
                v.len(),
                space.dim()
            )));
        }
        match space.pure_degree(v) {
            None | Some(_) if v.iter().all(|c| c.is_zero()) => Ok(()),
            Some(d) if d == deg => Ok(()),
            _ => Err(ModelError::Degree {
                what: what.to_string(),
                detail: format!("must be concentrated in degree {deg}"),
            }),
        }
    }

    /// Validate all degree discipline and structural invariants, and freeze.
    pub fn build(self) -> Result<ChainModel, ModelError> {
        let scalar = GradedSpace::scalar_line();
        self.check_op("d", &self.d, &[&self.closed], &self.closed)?;
        self.check_op("delta", &self.delta, &[&self.closed], &self.closed)?;
        self.check_pure("e", &self.closed, &self.e, 0)?;
        self.check_pure("b", &self.closed, &self.b, 1)?;
        self.check_pure("beta", &self.closed, &self.beta, -1)?;

        for ((l0, l1), pc) in &self.pairs {
            self.check_op(&format!("mu1({l0},{l1})"), &pc.mu1, &[&pc.space], &pc.space)?;
        }
        for (l, data) in &self.lagrangians {
            let space = self.pair_space(l, l)?;
            self.check_pure(&format!("e_{l}"), space, &data.e, 0)?;
            self.check_pure(&format!("c_{l}"), space, &data.c, 0)?;
            self.check_op(&format!("e_vee({l})"), &data.e_vee, &[space], &scalar)?;
        }
        for ((l0, l1, l2), op) in &self.mu2 {
            self.check_op(
                &format!("mu2({l0},{l1},{l2})"),
                op,
                &[self.pair_space(l1, l2)?, self.pair_space(l0, l1)?],
                self.pair_space(l0, l2)?,
            )?;
        }
        for ((l0, l1, l2, l3), op) in &self.mu3 {
            self.check_op(
                &format!("mu3({l0},{l1},{l2},{l3})"),
                op,
                &[
                    self.pair_space(l2, l3)?,
                    self.pair_space(l1, l2)?,
                    self.pair_space(l0, l1)?,
                ],
                self.pair_space(l0, l3)?,
            )?;
        }
        for (l, op) in &self.phi0 {
            self.check_op(
                &format!("phi0({l})"),
                op,
                &[&self.closed],
                self.pair_space(l, l)?,
            )?;
        }
        for (l, op) in &self.phi0_vee {
            self.check_op(
                &format!("phi0_vee({l})"),
                op,
                &[&self.closed, self.pair_space(l, l)?],
                &scalar,
            )?;
        }
        for ((l0, l1), op) in &self.phi1 {
            self.check_op(
                &format!("phi1({l0},{l1})"),
                op,
                &[&self.closed, self.pair_space(l0, l1)?],
                self.pair_space(l0, l1)?,
            )?;
        }
        for ((l0, l1, l2), op) in &self.phi2 {
            self.check_op(
                &format!("phi2({l0},{l1},{l2})"),
                op,
                &[
                    &self.closed,
                    self.pair_space(l1, l2)?,
                    self.pair_space(l0, l1)?,
                ],
                self.pair_space(l0, l2)?,
            )?;
        }
        for ((l0, l1), op) in &self.h_vee {
            self.check_op(
                &format!("h_vee({l0},{l1})"),
                op,
                &[self.pair_space(l1, l0)?, self.pair_space(l0, l1)?],
                &scalar,
            )?;
        }
        for (l, op) in &self.k_vee {
            self.check_op(
                &format!("k_vee({l})"),
                op,
                &[&self.closed, self.pair_space(l, l)?],
                &scalar,
            )?;
        }

        Ok(ChainModel {
            n: self.n,
            closed: self.closed,
            d: self.d,
            delta: self.delta,
            e: self.e,
            b: self.b,
            beta: self.beta,
            lagrangians: self.lagrangians,
            pairs: self.pairs,
            mu2: self.mu2,
            mu3: self.mu3,
            phi0: self.phi0,
            phi0_vee: self.phi0_vee,
            phi1: self.phi1,
            phi2: self.phi2,
            h_vee: self.h_vee,
            k_vee: self.k_vee,
        })
    }
}

// ---------------------------------------------------------------------------
// JSON wire format.
//
// {"schema": 1, "n": ..., "closed": {"space": {"deg": dim, ...}, "d": [...],
//  "delta": [...], "e": [[num,den],...], "b": ..., "beta": ...},
//  "lagrangians": {"V": {"e": ..., "e_vee": [...], "c": ...}},
//  "pairs": {"L0|L1": {"space": ..., "mu1": [...]}},
//  "mu2": {"L0|L1|L2": [...]}, ...}
//
// Tensors are lists of {"inputs": [basis ids], "output": [[basis id,
// coeff_num, coeff_den], ...]}; degree shifts are implied by the tensor kind.

pub(super) const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TensorEntryJson {
    inputs: Vec<usize>,
    output: Vec<(usize, i64, i64)>,
}

type TensorJson = Vec<TensorEntryJson>;

#[derive(Serialize, Deserialize)]
struct ClosedJson {
    space: BTreeMap<String, usize>,
    #[serde(default)]
    d: TensorJson,
    #[serde(default)]
    delta: TensorJson,
    e: Vec<Rational>,
    b: Vec<Rational>,
    beta: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct LagrangianJson {
    e: Vec<Rational>,
    #[serde(default)]
    e_vee: TensorJson,
    c: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    space: BTreeMap<String, usize>,
    #[serde(default)]
    mu1: TensorJson,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    schema: u32,
    n: u32,
    closed: ClosedJson,
    lagrangians: BTreeMap<String, LagrangianJson>,
    #[serde(default)]
    pairs: BTreeMap<String, PairJson>,
    #[serde(default)]
    mu2: BTreeMap<String, TensorJson>,
    #[serde(default)]
    mu3: BTreeMap<String, TensorJson>,
    #[serde(default)]
    phi0: BTreeMap<String, TensorJson>,
    #[serde(default)]
    phi0_vee: BTreeMap<String, TensorJson>,
    #[serde(default)]
    phi1: BTreeMap<String, TensorJson>,
    #[serde(default)]
    phi2: BTreeMap<String, TensorJson>,
    #[serde(default)]
    h_vee: BTreeMap<String, TensorJson>,
    #[serde(default)]
    k_vee: BTreeMap<String, TensorJson>,
}

#[derive(Debug, Error)]
pub enum ModelLoadError {
    #[error("model schema error: {0}")]
    Schema(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Semantic(#[from] ModelError),
}

fn space_from_json(dims: &BTreeMap<String, usize>) -> Result<GradedSpace, ModelLoadError> {
    let mut parsed = BTreeMap::new();
    for (k, &v) in dims {
        let deg: i64 = k
            .parse()
            .map_err(|_| ModelLoadError::Schema(format!("bad degree key {k:?}")))?;
        parsed.insert(deg, v);
    }
    Ok(GradedSpace::from_dims(&parsed))
}

fn space_to_json(space: &GradedSpace) -> BTreeMap<String, usize> {
    space
        .dims()
        .into_iter()
        .map(|(deg, dim)| (deg.to_string(), dim))
        .collect()
}

fn tensor_from_json(raw: &TensorJson, arity: usize, shift: i64) -> Result<MultiOp, ModelLoadError> {
    let mut op = MultiOp::new(arity, shift);
    for entry in raw {
        if entry.inputs.len() != arity {
            return Err(ModelLoadError::Schema(format!(
                "tensor entry has {} inputs, expected {}",
                entry.inputs.len(),
                arity
            )));
        }
        let mut output = Vec::with_capacity(entry.output.len());
        for &(idx, num, den) in &entry.output {
            if den == 0 {
                return Err(ModelLoadError::Schema("zero denominator".into()));
            }
            output.push((idx, Rational::new(num, den)));
        }
        op.set_entry(entry.inputs.clone(), output);
    }
    Ok(op)
}

fn tensor_to_json(op: &MultiOp) -> TensorJson {
    op.entries()
        .map(|(inputs, output)| TensorEntryJson {
            inputs: inputs.clone(),
            output: output
                .iter()
                .map(|(idx, c)| {
                    let (num, den) = c.to_i64_pair().expect("coefficient exceeds i64");
                    (*idx, num, den)
                })
                .collect(),
        })
        .collect()
}

fn split_key(key: &str, parts: usize) -> Result<Vec<&str>, ModelLoadError> {
    let fields: Vec<&str> = key.split('|').collect();
    if fields.len() != parts {
        return Err(ModelLoadError::Schema(format!(
            "key {key:?} must have {parts} |-separated labels"
        )));
    }
    Ok(fields)
}

impl ChainModel {
    pub fn from_json(value: &serde_json::Value) -> Result<Self, ModelLoadError> {
        let raw: ModelJson = serde_json::from_value(value.clone())
            .map_err(|e| ModelLoadError::Schema(e.to_string()))?;
        if raw.schema != SCHEMA_VERSION {
            return Err(ModelLoadError::SchemaVersion(raw.schema));
        }
        let n = raw.n as i64;
        let closed = space_from_json(&raw.closed.space)?;
        let mut builder = ChainModelBuilder::new(raw.n, closed);
        builder.d = tensor_from_json(&raw.closed.d, 1, 1)?;
        builder.delta = tensor_from_json(&raw.closed.delta, 1, -1)?;
        builder.e = raw.closed.e;
        builder.b = raw.closed.b;
        builder.beta = raw.closed.beta;

        for (key, pair) in &raw.pairs {
            let labels = split_key(key, 2)?;
            builder.add_pair(
                labels[0],
                labels[1],
                space_from_json(&pair.space)?,
                tensor_from_json(&pair.mu1, 1, 1)?,
            );
        }
        for (label, lag) in &raw.lagrangians {
            let key = (label.clone(), label.clone());
            if !builder.pairs.contains_key(&key) {
                return Err(ModelLoadError::Schema(format!(
                    "lagrangian {label} has no pair complex {label}|{label}"
                )));
            }
            builder.lagrangians.insert(
                label.clone(),
                Lagrangian {
                    e: lag.e.clone(),
                    e_vee: tensor_from_json(&lag.e_vee, 1, -n)?,
                    c: lag.c.clone(),
                },
            );
        }
        for (key, raw_op) in &raw.mu2 {
            let l = split_key(key, 3)?;
            builder.mu2.insert(
                (l[0].into(), l[1].into(), l[2].into()),
                tensor_from_json(raw_op, 2, 0)?,
            );
        }
        for (key, raw_op) in &raw.mu3 {
            let l = split_key(key, 4)?;
            builder.mu3.insert(
                (l[0].into(), l[1].into(), l[2].into(), l[3].into()),
                tensor_from_json(raw_op, 3, -1)?,
            );
        }
        for (key, raw_op) in &raw.phi0 {
            builder
                .phi0
                .insert(key.clone(), tensor_from_json(raw_op, 1, 0)?);
        }
        for (key, raw_op) in &raw.phi0_vee {
            builder
                .phi0_vee
                .insert(key.clone(), tensor_from_json(raw_op, 2, -n)?);
        }
        for (key, raw_op) in &raw.phi1 {
            let l = split_key(key, 2)?;
            builder
                .phi1
                .insert((l[0].into(), l[1].into()), tensor_from_json(raw_op, 2, -1)?);
        }
        for (key, raw_op) in &raw.phi2 {
            let l = split_key(key, 3)?;
            builder.phi2.insert(
                (l[0].into(), l[1].into(), l[2].into()),
                tensor_from_json(raw_op, 3, -2)?,
            );
        }
        for (key, raw_op) in &raw.h_vee {
            let l = split_key(key, 2)?;
            builder.h_vee.insert(
                (l[0].into(), l[1].into()),
                tensor_from_json(raw_op, 2, -n - 1)?,
            );
        }
        for (key, raw_op) in &raw.k_vee {
            builder
                .k_vee
                .insert(key.clone(), tensor_from_json(raw_op, 2, -n - 2)?);
        }
        Ok(builder.build()?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let join2 = |k: &(String, String)| format!("{}|{}", k.0, k.1);
        let join3 = |k: &(String, String, String)| format!("{}|{}|{}", k.0, k.1, k.2);
        let raw = ModelJson {
            schema: SCHEMA_VERSION,
            n: self.n,
            closed: ClosedJson {
                space: space_to_json(&self.closed),
                d: tensor_to_json(&self.d),
                delta: tensor_to_json(&self.delta),
                e: self.e.clone(),
                b: self.b.clone(),
                beta: self.beta.clone(),
            },
            lagrangians: self
                .lagrangians
                .iter()
                .map(|(k, v)| {
                    (
                        k.clone(),
                        LagrangianJson {
                            e: v.e.clone(),
                            e_vee: tensor_to_json(&v.e_vee),
                            c: v.c.clone(),
                        },
                    )
                })
                .collect(),
            pairs: self
                .pairs
                .iter()
                .map(|(k, v)| {
                    (
                        join2(k),
                        PairJson {
                            space: space_to_json(&v.space),
                            mu1: tensor_to_json(&v.mu1),
                        },
                    )
                })
                .collect(),
            mu2: self
                .mu2
                .iter()
                .map(|(k, v)| (join3(k), tensor_to_json(v)))
                .collect(),
            mu3: self
                .mu3
                .iter()
                .map(|(k, v)| {
                    (
                        format!("{}|{}|{}|{}", k.0, k.1, k.2, k.3),
                        tensor_to_json(v),
                    )
                })
                .collect(),
            phi0: self
                .phi0
                .iter()
                .map(|(k, v)| (k.clone(), tensor_to_json(v)))
                .collect(),
            phi0_vee: self
                .phi0_vee
                .iter()
                .map(|(k, v)| (k.clone(), tensor_to_json(v)))
                .collect(),
            phi1: self
                .phi1
                .iter()
                .map(|(k, v)| (join2(k), tensor_to_json(v)))
                .collect(),
            phi2: self
                .phi2
                .iter()
                .map(|(k, v)| (join3(k), tensor_to_json(v)))
                .collect(),
            h_vee: self
                .h_vee
                .iter()
                .map(|(k, v)| (join2(k), tensor_to_json(v)))
                .collect(),
            k_vee: self
                .k_vee
                .iter()
                .map(|(k, v)| (k.clone(), tensor_to_json(v)))
                .collect(),
        };
        serde_json::to_value(raw).expect("model serialization")
    }
}
