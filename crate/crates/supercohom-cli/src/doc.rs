//! Input documents: a JSON tree naming the field, the algebra, modules and (in characteristic 0)
//! a finite group with smash-product modules. Scalars are integers or `"a/b"` strings.

use std::collections::{BTreeMap, VecDeque};

use serde::Deserialize;

use supercohom::lie::{build_example, build_gl, ExampleId, LieSuperalgebra, Supermodule};
use supercohom::linalg::{FieldScalar, Matrix, Scalar, SuperMatrix};
use supercohom::varieties::{kac_module, regular_module, FiniteGroup, SmashModule, GROUP_CLOSURE_CAP};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Int(i64),
    Text(String),
}

impl ScalarValue {
    pub fn to<S: Scalar>(&self) -> Result<S, CliError> {
        match self {
            ScalarValue::Int(v) => Ok(S::from_i64(*v)),
            ScalarValue::Text(t) => {
                let f = FieldScalar::parse(t, S::tag()).map_err(|e| CliError::Parse(format!("scalar {t:?}: {e}")))?;
                S::lift(&f).map_err(|e| CliError::Parse(e.to_string()))
            }
        }
    }
}

pub type MatrixValue = Vec<Vec<ScalarValue>>;

fn matrix<S: Scalar>(m: &MatrixValue) -> Result<Matrix<S>, CliError> {
    let rows = m.iter().map(|r| r.iter().map(|x| x.to::<S>()).collect::<Result<Vec<S>, _>>()).collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows).map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime { p: u32 },
    Zero { char0: bool },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub smash_modules: BTreeMap<String, SmashSpec>,
    pub test_vectors: Option<Vec<Vec<ScalarValue>>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn characteristic(&self) -> Result<u32, CliError> {
        match self.field {
            FieldSpec::Prime { p } => Ok(p),
            FieldSpec::Zero { char0: true } => Ok(0),
            FieldSpec::Zero { char0: false } => Err(CliError::Parse("field: use {\"p\": prime} or {\"char0\": true}".into())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builder(AlgebraBuilder),
    Explicit(ExplicitAlgebra),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBuilder {
    /// `gl`, `odd_abelian`, `ex_3_1_2`, `ex_5_3_1`, `ex_5_3_2`, `ex_5_3_3`.
    pub builder: String,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub alphas: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub odd: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, ScalarValue>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationSpec {
    pub dims: (usize, usize),
    pub matrices: BTreeMap<String, MatrixValue>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub basis: Vec<BasisSpec>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    pub pmap: Option<BTreeMap<String, BTreeMap<String, ScalarValue>>>,
    pub realization: Option<RealizationSpec>,
}

pub fn example_id(b: &AlgebraBuilder) -> Result<ExampleId, CliError> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| CliError::Parse(format!("builder {} needs {what}", b.builder)));
    Ok(match b.builder.as_str() {
        "odd_abelian" => ExampleId::OddAbelian(need(b.d, "d")?),
        "ex_3_1_2" => ExampleId::Ex312,
        "ex_5_3_1" => ExampleId::Ex531,
        "ex_5_3_2" => ExampleId::Ex532,
        "ex_5_3_3" => {
            let n = need(b.n, "n")?;
            let alphas = b.alphas.clone().ok_or_else(|| CliError::Parse("ex_5_3_3 needs alphas".into()))?;
            ExampleId::Ex533 { n, alphas }
        }
        other => return Err(CliError::Parse(format!("unknown builder {other:?}"))),
    })
}

fn index_of(names: &[String], n: &str) -> Result<usize, CliError> {
    names.iter().position(|x| x == n).ok_or_else(|| CliError::Parse(format!("unknown basis element {n:?}")))
}

fn lie_vector<S: Scalar>(names: &[String], v: &BTreeMap<String, ScalarValue>) -> Result<Vec<S>, CliError> {
    let mut out = vec![S::zero(); names.len()];
    for (k, c) in v {
        out[index_of(names, k)?] += c.to::<S>()?;
    }
    Ok(out)
}

pub fn build_algebra<S: Scalar>(spec: &AlgebraSpec) -> Result<LieSuperalgebra<S>, CliError> {
    match spec {
        AlgebraSpec::Builder(b) if b.builder == "gl" => {
            let (m, n) = (b.m.ok_or_else(|| CliError::Parse("gl needs m".into()))?, b.n.ok_or_else(|| CliError::Parse("gl needs n".into()))?);
            Ok(build_gl::<S>(m, n)?)
        }
        AlgebraSpec::Builder(b) => Ok(build_example::<S>(&example_id(b)?)?),
        AlgebraSpec::Explicit(e) => {
            let names: Vec<String> = e.basis.iter().map(|b| b.name.clone()).collect();
            let odd: Vec<bool> = e.basis.iter().map(|b| b.odd).collect();
            let mut g = LieSuperalgebra::<S>::abelian(names.clone(), odd.clone());
            for br in &e.brackets {
                let (i, j) = (index_of(&names, &br.left)?, index_of(&names, &br.right)?);
                let v = lie_vector::<S>(&names, &br.value)?;
                let terms: Vec<(usize, S)> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                g.set_bracket(i, j, &terms);
            }
            if let Some(pm) = &e.pmap {
                let mut images = vec![None; names.len()];
                for (k, v) in pm {
                    let i = index_of(&names, k)?;
                    if odd[i] {
                        return Err(CliError::Parse(format!("p-map on odd element {k:?}")));
                    }
                    images[i] = Some(lie_vector::<S>(&names, v)?);
                }
                g.set_pmap(images);
            }
            if let Some(r) = &e.realization {
                let n = r.dims.0 + r.dims.1;
                let mut mats = vec![Matrix::zeros(n, n); names.len()];
                for (k, m) in &r.matrices {
                    mats[index_of(&names, k)?] = matrix::<S>(m)?;
                }
                let sm = mats
                    .iter()
                    .map(|m| SuperMatrix::from_dense(r.dims, r.dims, m))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                g.set_realization(sm);
            }
            Ok(g)
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Builder {
        /// `trivial`, `trivial_odd`, `natural`, `adjoint`, `regular`, `kac`.
        builder: String,
        weights: Option<(ScalarValue, ScalarValue)>,
    },
    Explicit {
        dims: (usize, usize),
        matrices: BTreeMap<String, MatrixValue>,
    },
}

pub fn build_module<S: Scalar>(g: &LieSuperalgebra<S>, spec: &ModuleSpec) -> Result<Supermodule<S>, CliError> {
    match spec {
        ModuleSpec::Builder { builder, weights } => Ok(match builder.as_str() {
            "trivial" => Supermodule::trivial(g, false),
            "trivial_odd" => Supermodule::trivial(g, true),
            "natural" => Supermodule::natural(g)?,
            "adjoint" => Supermodule::adjoint(g),
            "regular" => regular_module(g)?,
            "kac" => {
                let (a, b) = weights.as_ref().ok_or_else(|| CliError::Parse("kac needs weights".into()))?;
                kac_module(g, a.to::<S>()?, b.to::<S>()?)?
            }
            other => return Err(CliError::Parse(format!("unknown module builder {other:?}"))),
        }),
        ModuleSpec::Explicit { dims, matrices } => {
            let n = dims.0 + dims.1;
            let mut mats = vec![Matrix::zeros(n, n); g.dim()];
            for (k, m) in matrices {
                let m = matrix::<S>(m)?;
                if m.rows() != n || m.cols() != n {
                    return Err(CliError::Parse(format!("matrix for {k:?} is not {n}x{n}")));
                }
                mats[index_of(&g.names, k)?] = m;
            }
            Supermodule::from_dense(*dims, &mats).map_err(|e| CliError::Parse(e.to_string()))
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `trivial` (with `dim`) or `swap`.
    Builder { builder: String, dim: Option<usize> },
    Generators { dim: usize, generators: Vec<MatrixValue> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SmashSpec {
    /// `trivial`, `trivial_odd`, `exterior`, `regular`.
    Builder { builder: String },
    /// Operators for a basis of `V` and for each group generator.
    Explicit { parity: Vec<bool>, odd_ops: Vec<MatrixValue>, generator_ops: Vec<MatrixValue> },
}

/// A group together with the generator matrices used to extend module actions.
pub struct GroupData<S> {
    pub group: FiniteGroup<S>,
    generators: Vec<Matrix<S>>,
}

pub fn build_group<S: Scalar>(spec: &GroupSpec) -> Result<GroupData<S>, CliError> {
    let (dim, generators) = match spec {
        GroupSpec::Builder { builder, dim } => match builder.as_str() {
            "swap" => (2, vec![Matrix::from_ints(&[&[0, 1], &[1, 0]])]),
            "trivial" => (dim.ok_or_else(|| CliError::Parse("trivial group needs dim".into()))?, vec![]),
            other => return Err(CliError::Parse(format!("unknown group builder {other:?}"))),
        },
        GroupSpec::Generators { dim, generators } => (*dim, generators.iter().map(matrix::<S>).collect::<Result<Vec<_>, _>>()?),
    };
    let group = FiniteGroup::generate(dim, &generators, GROUP_CLOSURE_CAP)?;
    Ok(GroupData { group, generators })
}

pub fn build_smash<S: Scalar>(gd: &GroupData<S>, spec: &SmashSpec) -> Result<SmashModule<S>, CliError> {
    let group = &gd.group;
    match spec {
        SmashSpec::Builder { builder } => Ok(match builder.as_str() {
            "trivial" => SmashModule::trivial(group, false),
            "trivial_odd" => SmashModule::trivial(group, true),
            "exterior" => SmashModule::exterior(group),
            "regular" => SmashModule::regular(group)?,
            other => return Err(CliError::Parse(format!("unknown smash module builder {other:?}"))),
        }),
        SmashSpec::Explicit { parity, odd_ops, generator_ops } => {
            let n = parity.len();
            let odd_ops = odd_ops.iter().map(matrix::<S>).collect::<Result<Vec<_>, _>>()?;
            let gen_ops = generator_ops.iter().map(matrix::<S>).collect::<Result<Vec<_>, _>>()?;
            if gen_ops.len() != gd.generators.len() {
                return Err(CliError::Parse("one operator per group generator".into()));
            }
            // replay the closure order of FiniteGroup::generate
            let mut elements = vec![Matrix::identity(group.dim)];
            let mut ops = vec![Matrix::identity(n)];
            let mut queue = VecDeque::from([0usize]);
            while let Some(i) = queue.pop_front() {
                for (g, op) in gd.generators.iter().zip(&gen_ops) {
                    let h = g.mul(&elements[i]).map_err(|e| CliError::Parse(e.to_string()))?;
                    if !elements.contains(&h) {
                        ops.push(op.mul(&ops[i]).map_err(|e| CliError::Parse(e.to_string()))?);
                        elements.push(h);
                        queue.push_back(elements.len() - 1);
                    }
                }
            }
            Ok(SmashModule { parity: parity.clone(), odd_ops, group_ops: ops })
        }
    }
}
