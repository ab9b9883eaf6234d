//! Command implementations. Each returns `Ok(pass)` so `main` can map the
//! outcome onto the exit-code contract.

use std::fmt;
use std::path::Path;

use mink_core::chart::{AffineChart, PowerWarp};
use mink_core::density;
use mink_core::hilbert;
use mink_core::quad::DEFAULT_SQUARE_ORDER;
use mink_core::rep::{self, nonseparability_family, verify_group_law, verify_unitarity, RepConfig};
use mink_core::sample::Sampler;
use mink_core::surface::{classify_span, SurfacePiece};
use mink_core::vec4::FourVector;
use mink_core::{Complex64, Real};

use crate::report::{fmt_complex, Check, Report};
use crate::scene::{
    build_term, load_scene, read_scene_file, FrameSpec, SceneFile, StateSpec, TermSpec,
};
use crate::{MeasureKind, Suite};

/// Error with the exit code it maps to (2 input, 3 I/O).
#[derive(Debug)]
pub struct CliError {
    message: String,
    exit_code: u8,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit_code: 3,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.exit_code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn internal(e: mink_core::Error) -> CliError {
    CliError::input(e.to_string())
}

fn emit(report: &Report, json: bool) {
    print!("{}", report.render(json));
}

/// `classify NAME`: reads the raw scene (no validation) and classifies the
/// spans of every term of the named state.
pub fn classify(scene_path: &Path, name: &str, json: bool) -> Result<bool, CliError> {
    let raw = read_scene_file(scene_path)?;
    let state = raw
        .states
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::input(format!("unknown state `{name}`")))?;
    let mut checks = Vec::new();
    for (k, term) in state.terms.iter().enumerate() {
        let observed = match classify_span(
            FourVector::<f64>::from_array(term.span_u),
            FourVector::from_array(term.span_v),
        ) {
            Ok(class) => class.name().to_string(),
            Err(e) => format!("error: {e}"),
        };
        let pass = observed == "space-like";
        checks.push(Check::new(format!("{name}[{k}]"), observed, None, pass));
    }
    let report = Report::new(format!("classify {name}"), checks);
    emit(&report, json);
    Ok(report.pass)
}

/// `measure NAME KIND`: integrates the requested measure over every piece
/// of the named state, with a quadrature self-check column.
pub fn measure(
    scene_path: &Path,
    name: &str,
    kind: MeasureKind,
    json: bool,
    tol: Option<f64>,
) -> Result<bool, CliError> {
    let scene = load_scene(scene_path)?;
    let state = scene.state(name)?;
    let check_tol = tol.unwrap_or(f64::TOL_QUAD_CHECK);
    let mut checks = Vec::new();
    let mut closed_total = Complex64::new(0.0, 0.0);
    for (k, term) in state.terms().iter().enumerate() {
        let rect = match &term.piece {
            SurfacePiece::Rect(r) => *r,
            SurfacePiece::Region(_) => {
                return Err(CliError::input(
                    "measure expects rectangular pieces (scene-defined states)",
                ))
            }
        };
        let chart = AffineChart::new(rect.origin, rect.span_u, rect.span_v);
        // quadrature path through a nonlinear reparametrization as the
        // self-check column
        let warped = PowerWarp::new(chart, 2, 1);
        let (closed, quad): (Complex64, Complex64) = match kind {
            MeasureKind::Area => {
                let c = rect.euclidean_area();
                let q = density::surface_area(&warped, DEFAULT_SQUARE_ORDER, check_tol)
                    .map_err(internal)?;
                (Complex64::new(c, 0.0), Complex64::new(q, 0.0))
            }
            MeasureKind::Mink => {
                let c = rect.invariant_area();
                let q = density::invariant_area(&warped, DEFAULT_SQUARE_ORDER, check_tol)
                    .map_err(internal)?;
                (Complex64::new(c, 0.0), Complex64::new(q, 0.0))
            }
            MeasureKind::Signed => {
                let c = density::invariant_area_signed(&chart, DEFAULT_SQUARE_ORDER, check_tol)
                    .map_err(internal)?;
                let q = density::invariant_area_signed(&warped, DEFAULT_SQUARE_ORDER, check_tol)
                    .map_err(internal)?;
                (c, q)
            }
        };
        closed_total += closed;
        let delta = (quad - closed).norm();
        checks.push(Check::new(
            format!("{name}[{k}] quadrature delta"),
            format!("{delta:.3e}"),
            Some(check_tol),
            delta <= check_tol,
        ));
    }
    checks.insert(
        0,
        Check::new(
            format!("{name} {}", kind_name(kind)),
            fmt_complex(closed_total),
            None,
            true,
        ),
    );
    let report = Report::new(format!("measure {name}"), checks);
    emit(&report, json);
    Ok(report.pass)
}

fn kind_name(kind: MeasureKind) -> &'static str {
    match kind {
        MeasureKind::Area => "euclidean area",
        MeasureKind::Mink => "invariant area",
        MeasureKind::Signed => "signed invariant measure",
    }
}

/// `inner NAME1 NAME2`: both inner products.
pub fn inner(scene_path: &Path, name1: &str, name2: &str, json: bool) -> Result<bool, CliError> {
    let scene = load_scene(scene_path)?;
    let v = scene.state(name1)?;
    let w = scene.state(name2)?;
    let invariant = hilbert::inner(v, w).map_err(internal)?;
    let legacy = hilbert::inner_legacy(v, w).map_err(internal)?;
    let report = Report::new(
        format!("inner {name1} {name2}"),
        vec![
            Check::new("invariant measure", fmt_complex(invariant), None, true),
            Check::new("euclidean area measure", fmt_complex(legacy), None, true),
        ],
    );
    emit(&report, json);
    Ok(true)
}

/// `act TRANSFORM STATE OUT`: writes the transformed state as a loadable
/// scene fragment with expanded field expressions.
pub fn act(
    scene_path: &Path,
    transform: &str,
    state_name: &str,
    out: &Path,
    json: bool,
) -> Result<bool, CliError> {
    let scene = load_scene(scene_path)?;
    let g = scene.transform(transform)?;
    let v = scene.state(state_name)?;
    let moved = rep::act(&scene.config, g, v).map_err(internal)?;

    let mut terms = Vec::new();
    for term in moved.terms() {
        let rect = match &term.piece {
            SurfacePiece::Rect(r) => *r,
            SurfacePiece::Region(_) => {
                return Err(CliError::input(
                    "act expects rectangular pieces (scene-defined states)",
                ))
            }
        };
        terms.push(TermSpec {
            origin: rect.origin.to_array(),
            span_u: rect.span_u.to_array(),
            span_v: rect.span_v.to_array(),
            frame: FrameSpec::Explicit {
                f0: term.frame.f0.to_array(),
                f1: term.frame.f1.to_array(),
            },
            fields: term
                .section
                .components()
                .iter()
                .map(|f| f.print())
                .collect(),
        });
    }
    let fragment = SceneFile {
        n_components: moved.n_components(),
        config: scene.raw.config,
        states: vec![StateSpec {
            name: format!("{state_name}_{transform}"),
            terms,
        }],
        transforms: Vec::new(),
    };
    let mut text = serde_json::to_string_pretty(&fragment)
        .map_err(|e| CliError::input(format!("serialize: {e}")))?;
    text.push('\n');
    std::fs::write(out, text)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;

    // round-trip sanity: the written fragment must load and agree with the
    // in-memory state at the surface corners
    let reloaded =
        build_term(&fragment.states[0].terms[0], fragment.n_components).map_err(|e| {
            CliError::input(format!("internal: written fragment does not load: {e}"))
        })?;
    let x = reloaded.piece.vertices_r4()[0];
    let a = reloaded.section.eval(&x).map_err(internal)?;
    let b = moved.terms()[0].section.eval(&x).map_err(internal)?;
    let dev = a
        .iter()
        .zip(b.iter())
        .map(|(p, q)| (*p - *q).norm())
        .fold(0.0, f64::max);

    let report = Report::new(
        format!("act {transform} {state_name}"),
        vec![
            Check::new("pieces written", format!("{}", moved.terms().len()), None, true),
            Check::new("reload field deviation", format!("{dev:.3e}"), Some(1e-10), dev <= 1e-10),
        ],
    );
    emit(&report, json);
    Ok(report.pass)
}

/// `verify SUITE`: property suites with deterministic seeded sampling.
pub fn verify(
    _scene: Option<&Path>,
    suite: Suite,
    seed: u64,
    trials: usize,
    json: bool,
    tol: Option<f64>,
) -> Result<bool, CliError> {
    let mut checks = Vec::new();
    match suite {
        Suite::Invariance => checks.extend(suite_invariance(seed, trials, tol)?),
        Suite::Unitarity => checks.extend(suite_unitarity(seed, trials, tol)?),
        Suite::Grouplaw => checks.extend(suite_grouplaw(seed, trials, tol)?),
        Suite::Orthogonality => checks.extend(suite_orthogonality(seed, tol)?),
        Suite::Identity => checks.extend(suite_identity(seed, trials, tol)?),
        Suite::All => {
            checks.extend(suite_identity(seed, trials, tol)?);
            checks.extend(suite_invariance(seed, trials, tol)?);
            checks.extend(suite_unitarity(seed, trials, tol)?);
            checks.extend(suite_grouplaw(seed, trials, tol)?);
            checks.extend(suite_orthogonality(seed, tol)?);
        }
    }
    let report = Report::new(format!("verify {suite:?}").to_lowercase(), checks).with_run(seed, trials);
    emit(&report, json);
    Ok(report.pass)
}

/// Pointwise identity between the imaginary-time density and the root of
/// the Minkowski Gram determinant.
fn suite_identity(seed: u64, trials: usize, tol: Option<f64>) -> Result<Vec<Check>, CliError> {
    let tolerance = tol.unwrap_or(1e-12);
    let mut sampler = Sampler::<f64>::substream(seed, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let rect = sampler.spacelike_rectangle(2.0);
        let chart = AffineChart::new(rect.origin, rect.span_u, rect.span_v);
        let s = sampler.uniform(0.0, 1.0);
        let t = sampler.uniform(0.0, 1.0);
        let direct = density::require_spacelike_density(&chart, s, t).map_err(internal)?;
        let gram = density::minkowski_gram_det(rect.span_u, rect.span_v).sqrt();
        worst = worst.max((direct - gram).abs());
    }
    Ok(vec![Check::new(
        "pointwise density = sqrt(minkowski gram)",
        format!("{worst:.3e}"),
        Some(tolerance),
        worst <= tolerance,
    )])
}

/// Invariant measures are unchanged under restricted Lorentz maps; the
/// Euclidean area of a boosted square is not.
fn suite_invariance(seed: u64, trials: usize, tol: Option<f64>) -> Result<Vec<Check>, CliError> {
    let tolerance = tol.unwrap_or(1e-10);
    let mut sampler = Sampler::<f64>::substream(seed, 2);
    let mut worst_abs: f64 = 0.0;
    let mut worst_signed: f64 = 0.0;
    for _ in 0..trials {
        let rect = sampler.spacelike_rectangle(1.5);
        let m = sampler.restricted_lorentz(2.0);
        let moved = mink_core::surface::RectSurface::new(
            m.apply(rect.origin),
            m.apply(rect.span_u),
            m.apply(rect.span_v),
        )
        .map_err(internal)?;
        let before = rect.invariant_area();
        let after = moved.invariant_area();
        worst_abs = worst_abs.max((after - before).abs() / before.abs());

        let chart_before = AffineChart::new(rect.origin, rect.span_u, rect.span_v);
        let chart_after = AffineChart::new(moved.origin, moved.span_u, moved.span_v);
        let s_before = density::invariant_area_signed(&chart_before, 8, 1e-8).map_err(internal)?;
        let s_after = density::invariant_area_signed(&chart_after, 8, 1e-8).map_err(internal)?;
        worst_signed = worst_signed.max((s_after - s_before).norm() / s_before.norm());
    }

    // negative control: the Euclidean area of the boosted unit square
    let boosted = mink_core::lorentz::LorentzMatrix::boost(mink_core::lorentz::Axis::X2, 1.0);
    let square = mink_core::surface::RectSurface::standard_square();
    let moved = mink_core::surface::RectSurface::new(
        boosted.apply(square.origin),
        boosted.apply(square.span_u),
        boosted.apply(square.span_v),
    )
    .map_err(internal)?;
    let euclid = moved.euclidean_area();
    let expect = 2.0f64.cosh().sqrt();
    let mink = moved.invariant_area();

    Ok(vec![
        Check::new(
            "invariant area under lorentz maps (rel)",
            format!("{worst_abs:.3e}"),
            Some(tolerance),
            worst_abs <= tolerance,
        ),
        Check::new(
            "signed measure under lorentz maps (rel)",
            format!("{worst_signed:.3e}"),
            Some(tolerance),
            worst_signed <= tolerance,
        ),
        Check::new(
            "boosted square euclidean area = sqrt(cosh 2)",
            format!("{:.3e}", (euclid - expect).abs()),
            Some(1e-10),
            (euclid - expect).abs() <= 1e-10 && (euclid - 1.0).abs() >= 0.5,
        ),
        Check::new(
            "boosted square invariant area stays 1",
            format!("{:.3e}", (mink - 1.0).abs()),
            Some(1e-10),
            (mink - 1.0).abs() <= 1e-10,
        ),
    ])
}

fn suite_unitarity(seed: u64, trials: usize, tol: Option<f64>) -> Result<Vec<Check>, CliError> {
    let tolerance = tol.unwrap_or(1e-9);
    let cfg = RepConfig {
        h_hat: 1.0,
        p_hat: 0.5,
    };
    let mut sampler = Sampler::<f64>::substream(seed, 3);
    let mut worst: f64 = 0.0;
    let mut largest_pairing: f64 = 0.0;
    for _ in 0..trials {
        let g = sampler.group_element(1.5, 1.5).map_err(internal)?;
        let (v, w) = sampler.overlapping_state_pair(2, 1, 1.0, 1.0).map_err(internal)?;
        let r = verify_unitarity(&cfg, &g, &v, &w, tolerance).map_err(internal)?;
        largest_pairing = largest_pairing.max(r.before.norm());
        worst = worst.max(r.deviation);
    }

    // negative control: the euclidean-area inner product of the constant
    // field on the unit square under a boost of rapidity 1 along x2
    let g = mink_core::InhomogeneousElement64::from_lorentz(mink_core::sl2c::SL2C::boost(
        mink_core::lorentz::Axis::X2,
        1.0,
    ))
    .map_err(internal)?;
    let v = unit_square_state().map_err(internal)?;
    let r = mink_core::rep::verify_unitarity_legacy(&cfg, &g, &v, &v, tolerance).map_err(internal)?;

    Ok(vec![
        Check::new(
            "inner product preserved (max dev)",
            format!("{worst:.3e}"),
            Some(tolerance),
            worst <= tolerance,
        ),
        Check::new(
            "pairings non-vacuous (max |<v,w>|)",
            format!("{largest_pairing:.3e}"),
            None,
            largest_pairing > 1e-3,
        ),
        Check::new(
            "euclidean-area inner product breaks under boost",
            format!("{:.3e}", r.deviation),
            None,
            r.deviation >= 0.1,
        ),
    ])
}

fn suite_grouplaw(seed: u64, trials: usize, tol: Option<f64>) -> Result<Vec<Check>, CliError> {
    let structural = tol.unwrap_or(1e-9);
    let norm_tol = 1e-8;
    let cfg = RepConfig {
        h_hat: 1.0,
        p_hat: 0.5,
    };
    let mut sampler = Sampler::<f64>::substream(seed, 4);
    let mut worst_structural: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let mut all_pass = true;
    for _ in 0..trials {
        let g1 = sampler.group_element(1.5, 1.5).map_err(internal)?;
        let g2 = sampler.group_element(1.5, 1.5).map_err(internal)?;
        let v = sampler.state(2, 1, 1.0, 1.0).map_err(internal)?;
        let mut rng = sampler.rng().clone();
        let r = verify_group_law(&cfg, &g1, &g2, &v, &mut rng, structural, norm_tol)
            .map_err(internal)?;
        worst_structural = worst_structural
            .max(r.max_vertex_deviation)
            .max(r.max_frame_deviation)
            .max(r.max_field_deviation);
        worst_norm = worst_norm.max(r.norm_deviation);
        all_pass &= r.pass;
    }
    Ok(vec![
        Check::new(
            "structural comparison (max dev)",
            format!("{worst_structural:.3e}"),
            Some(structural),
            worst_structural <= structural,
        ),
        Check::new(
            "norm |U1 U2 v - U12 v| (max)",
            format!("{worst_norm:.3e}"),
            Some(norm_tol),
            all_pass && worst_norm <= norm_tol,
        ),
    ])
}

fn suite_orthogonality(seed: u64, tol: Option<f64>) -> Result<Vec<Check>, CliError> {
    let tolerance = tol.unwrap_or(1e-12);
    let _ = seed; // the family is deterministic
    let states = nonseparability_family(50, FourVector::new(0.0, 0.0, 2.0, 0.0), 1)
        .map_err(internal)?;
    let gram = mink_core::rep::family_gram(&states).map_err(internal)?;
    let mut worst: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((z - Complex64::new(expect, 0.0)).norm());
        }
    }
    Ok(vec![Check::new(
        "gram of 50 disjoint translates = identity",
        format!("{worst:.3e}"),
        Some(tolerance),
        worst <= tolerance,
    )])
}
