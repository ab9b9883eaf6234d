//! Scene file schema and loading.
//!
//! ```json
//! {
//!   "n_components": 1,
//!   "config": { "h_hat": 1.0, "p_hat": 0.5 },
//!   "states": [
//!     { "name": "unit",
//!       "terms": [ { "origin": [0,0,0,0],
//!                    "span_u": [0,0,1,0],
//!                    "span_v": [0,0,0,1],
//!                    "frame": "standard",
//!                    "fields": ["1"] } ] } ],
//!   "transforms": [
//!     { "name": "b2", "boost": { "axis": 2, "zeta": 1.0 } },
//!     { "name": "r3", "rotation": { "axis": 3, "theta": 1.5707963267948966 } },
//!     { "name": "g",  "translation": [0,0,0,0],
//!       "sl2c": [[1,0],[0,0],[0,0],[1,0]] } ]
//! }
//! ```
//!
//! Frames are either the string `"standard"` (the pair `e0, e1`) or
//! explicit `{"f0": [...], "f1": [...]}`. Surfaces are validated as
//! space-like on load; `classify` inspects the raw terms instead.

use std::path::Path;

use mink_core::field::FieldSection;
use mink_core::hilbert::{StateTerm, StateVector};
use mink_core::lorentz::Axis;
use mink_core::rep::RepConfig;
use mink_core::sl2c::SL2C;
use mink_core::surface::{standard_frame, Frame, RectSurface, SurfacePiece};
use mink_core::vec4::FourVector;
use mink_core::{Complex, InhomogeneousElement64};
use serde::{Deserialize, Serialize};

use crate::commands::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SceneFile {
    pub n_components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigSpec>,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub transforms: Vec<TransformSpec>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConfigSpec {
    pub h_hat: f64,
    pub p_hat: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateSpec {
    pub name: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub origin: [f64; 4],
    pub span_u: [f64; 4],
    pub span_v: [f64; 4],
    pub frame: FrameSpec,
    pub fields: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameSpec {
    Named(String),
    Explicit { f0: [f64; 4], f1: [f64; 4] },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: TransformKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TransformKind {
    General {
        translation: [f64; 4],
        /// Row-major entries `a, b, c, d`, each as `[re, im]`.
        sl2c: [[f64; 2]; 4],
    },
    Boost { boost: BoostSpec },
    Rotation { rotation: RotationSpec },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoostSpec {
    pub axis: usize,
    pub zeta: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RotationSpec {
    pub axis: usize,
    pub theta: f64,
}

/// A loaded, validated scene.
pub struct Scene {
    pub raw: SceneFile,
    pub config: RepConfig<f64>,
    pub states: Vec<(String, StateVector<f64>)>,
    pub transforms: Vec<(String, InhomogeneousElement64)>,
}

pub fn read_scene_file(path: &Path) -> Result<SceneFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed scene {}: {e}", path.display())))
}

fn axis_of(index: usize) -> Result<Axis, CliError> {
    Axis::from_index(index)
        .ok_or_else(|| CliError::input(format!("axis must be 1, 2 or 3, got {index}")))
}

pub fn build_term(spec: &TermSpec, n_components: usize) -> Result<StateTerm<f64>, CliError> {
    if spec.fields.len() != n_components {
        return Err(CliError::input(format!(
            "term has {} field components, scene declares {}",
            spec.fields.len(),
            n_components
        )));
    }
    let rect = RectSurface::new(
        FourVector::from_array(spec.origin),
        FourVector::from_array(spec.span_u),
        FourVector::from_array(spec.span_v),
    )
    .map_err(|e| CliError::input(format!("invalid surface: {e}")))?;
    let frame = match &spec.frame {
        FrameSpec::Named(name) if name == "standard" => standard_frame(&rect)
            .map_err(|e| CliError::input(format!("standard frame not applicable: {e}")))?,
        FrameSpec::Named(other) => {
            return Err(CliError::input(format!("unknown frame `{other}`")));
        }
        FrameSpec::Explicit { f0, f1 } => {
            Frame::new(FourVector::from_array(*f0), FourVector::from_array(*f1))
                .map_err(|e| CliError::input(format!("invalid frame: {e}")))?
        }
    };
    let components = spec
        .fields
        .iter()
        .map(|src| mink_core::field::parse_field::<f64>(src))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input(format!("field expression: {e}")))?;
    Ok(StateTerm {
        piece: SurfacePiece::Rect(rect),
        section: FieldSection::new(components),
        frame,
    })
}

pub fn load_scene(path: &Path) -> Result<Scene, CliError> {
    let raw = read_scene_file(path)?;
    if raw.n_components == 0 {
        return Err(CliError::input("n_components must be at least 1"));
    }
    let config = match raw.config {
        Some(c) => RepConfig {
            h_hat: c.h_hat,
            p_hat: c.p_hat,
        },
        None => RepConfig::default(),
    };

    let mut states = Vec::new();
    for s in &raw.states {
        if states.iter().any(|(n, _)| n == &s.name) {
            return Err(CliError::input(format!("duplicate state name `{}`", s.name)));
        }
        let terms = s
            .terms
            .iter()
            .map(|t| build_term(t, raw.n_components))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::input(format!("state `{}`: {e}", s.name)))?;
        let state = StateVector::new(raw.n_components, terms)
            .map_err(|e| CliError::input(format!("state `{}`: {e}", s.name)))?;
        states.push((s.name.clone(), state));
    }

    let mut transforms = Vec::new();
    for t in &raw.transforms {
        if transforms.iter().any(|(n, _)| n == &t.name) {
            return Err(CliError::input(format!(
                "duplicate transform name `{}`",
                t.name
            )));
        }
        let element = match &t.kind {
            TransformKind::General { translation, sl2c } => {
                let m = SL2C::new(
                    Complex::new(sl2c[0][0], sl2c[0][1]),
                    Complex::new(sl2c[1][0], sl2c[1][1]),
                    Complex::new(sl2c[2][0], sl2c[2][1]),
                    Complex::new(sl2c[3][0], sl2c[3][1]),
                )
                .map_err(|e| CliError::input(format!("transform `{}`: {e}", t.name)))?;
                InhomogeneousElement64::new(FourVector::from_array(*translation), m)
                    .map_err(|e| CliError::input(format!("transform `{}`: {e}", t.name)))?
            }
            TransformKind::Boost { boost } => {
                let axis = axis_of(boost.axis)?;
                InhomogeneousElement64::from_lorentz(SL2C::boost(axis, boost.zeta))
                    .map_err(|e| CliError::input(format!("transform `{}`: {e}", t.name)))?
            }
            TransformKind::Rotation { rotation } => {
                let axis = axis_of(rotation.axis)?;
                InhomogeneousElement64::from_lorentz(SL2C::rotation(axis, rotation.theta))
                    .map_err(|e| CliError::input(format!("transform `{}`: {e}", t.name)))?
            }
        };
        transforms.push((t.name.clone(), element));
    }

    Ok(Scene {
        raw,
        config,
        states,
        transforms,
    })
}

impl Scene {
    pub fn state(&self, name: &str) -> Result<&StateVector<f64>, CliError> {
        self.states
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| CliError::input(format!("unknown state `{name}`")))
    }

    pub fn transform(&self, name: &str) -> Result<&InhomogeneousElement64, CliError> {
        self.transforms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| CliError::input(format!("unknown transform `{name}`")))
    }
}
