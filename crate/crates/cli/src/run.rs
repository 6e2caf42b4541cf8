//! Dispatch of a validated request to the owning construction, with every
//! closed-form value checked against its independent measurement.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use paradoxlab_core::closedform::{rational_from_f64, ExactValue, Rational};
use paradoxlab_core::dissection::{self, PieceSet};
use paradoxlab_core::geometry::{
    measure_length, measure_polygon_area_float, shoelace_area_exact, shoelace_float,
    sup_distance_to_segment, DEFAULT_SAMPLES_PER_PRIMITIVE,
};
use paradoxlab_core::staircase::{self, f_lambda};
use paradoxlab_core::{koch, revolution, wheel};
use paradoxlab_core::{ClosedForm, CurveIteration, HornQuery, Point, StaircaseModel, WheelConfig};

use crate::error::{CliError, CliResult, ErrorCode};
use crate::params::{Paradox, Params};

pub const SAMPLES_ENV: &str = "PARADOXLAB_SAMPLES";

/// Relative tolerance of every length and area oracle.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
/// Slack added to the a-priori quadrature error bound for rounding.
pub const QUADRATURE_ROUNDING: f64 = 1e-11;
pub const WHEEL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub samples_per_primitive: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            samples_per_primitive: DEFAULT_SAMPLES_PER_PRIMITIVE,
        }
    }
}

impl Settings {
    pub fn from_env() -> CliResult<Self> {
        match std::env::var(SAMPLES_ENV) {
            Ok(v) => Self::with_samples(&v),
            Err(_) => Ok(Settings::default()),
        }
    }

    pub fn with_samples(v: &str) -> CliResult<Self> {
        match v.trim().parse::<usize>() {
            Ok(s) if (2..=1 << 16).contains(&s) => Ok(Settings { samples_per_primitive: s }),
            _ => Err(CliError::invalid_parameter(
                SAMPLES_ENV,
                format!("{SAMPLES_ENV} must be an integer in 2..=65536, got {v:?}"),
            )),
        }
    }
}

/// One measured quantity at one iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub paradox: Paradox,
    pub params: BTreeMap<String, String>,
    pub n: u32,
    pub quantity: String,
    pub closed_form: ClosedForm,
    pub float_value: f64,
    pub oracle_value: f64,
    /// Sampled distance from the curve to the base segment.
    pub sup_distance: Option<f64>,
    /// Largest accepted `|float_value − oracle_value|`.
    pub tolerance: f64,
    /// False when the oracle disagrees beyond `tolerance`.
    pub ok: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
}

impl IterationReport {
    pub fn discrepancy(&self) -> f64 {
        (self.float_value - self.oracle_value).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub paradox: Paradox,
    pub params: BTreeMap<String, String>,
    pub ok: bool,
    pub reports: Vec<IterationReport>,
}

impl RunOutput {
    /// The output itself, or an oracle-failure error naming the first
    /// offending report.
    pub fn success(&self) -> CliResult<()> {
        match self.reports.iter().find(|r| !r.ok) {
            None => Ok(()),
            Some(r) => Err(CliError::new(
                ErrorCode::OracleFailure,
                format!(
                    "{} {} at n = {}: closed form {} but oracle {} (|Δ| = {:e} > {:e})",
                    r.paradox,
                    r.quantity,
                    r.n,
                    r.float_value,
                    r.oracle_value,
                    r.discrepancy(),
                    r.tolerance
                ),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledCurve {
    pub label: String,
    pub curve: CurveIteration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryOutput {
    pub paradox: Paradox,
    pub params: BTreeMap<String, String>,
    pub curves: Vec<LabeledCurve>,
}

struct Builder<'a> {
    params: &'a Params,
    verdict: String,
    reports: Vec<IterationReport>,
}

impl Builder<'_> {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        n: u32,
        quantity: &str,
        closed_form: ClosedForm,
        oracle_value: f64,
        tolerance: f64,
        sup_distance: Option<f64>,
        metrics: &[(&str, f64)],
    ) {
        let float_value = closed_form.eval_float();
        let ok = (float_value - oracle_value).abs() <= tolerance;
        self.reports.push(IterationReport {
            paradox: self.params.paradox(),
            params: self.params.values().clone(),
            n,
            quantity: quantity.to_string(),
            closed_form,
            float_value,
            oracle_value,
            sup_distance,
            tolerance,
            ok,
            verdict: self.verdict.clone(),
            metrics: metrics.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        });
    }

    fn finish(self) -> RunOutput {
        RunOutput {
            paradox: self.params.paradox(),
            params: self.params.values().clone(),
            ok: self.reports.iter().all(|r| r.ok),
            reports: self.reports,
        }
    }
}

fn relative(value: f64) -> f64 {
    RELATIVE_TOLERANCE * value.abs().max(f64::MIN_POSITIVE)
}

pub fn run(params: &Params, settings: &Settings) -> CliResult<RunOutput> {
    match params.paradox() {
        Paradox::Staircase => run_staircase(params, settings),
        Paradox::Koch => run_koch(params),
        Paradox::Horn => run_horn(params),
        Paradox::Dissection => run_dissection(params),
        Paradox::Wheel => run_wheel(params),
    }
}

pub fn geometry(params: &Params) -> CliResult<GeometryOutput> {
    let curves = match params.paradox() {
        Paradox::Staircase => staircase_geometry(params)?,
        Paradox::Koch => {
            let state = koch::build_koch(params.float("a"), params.integer("n") as u32)?;
            vec![label("boundary", state.boundary)]
        }
        Paradox::Horn => horn_geometry(params.float("upper"))?,
        Paradox::Dissection => dissection_geometry(params.integer("k") as u32)?,
        Paradox::Wheel => wheel_geometry(params)?,
    };
    Ok(GeometryOutput {
        paradox: params.paradox(),
        params: params.values().clone(),
        curves,
    })
}

fn label(label: &str, curve: CurveIteration) -> LabeledCurve {
    LabeledCurve {
        label: label.to_string(),
        curve,
    }
}

pub fn staircase_model(params: &Params) -> CliResult<StaircaseModel> {
    Ok(match params.choice("model") {
        "semicircle" => StaircaseModel::Semicircle,
        "iso-right" => StaircaseModel::IsoRight,
        "equilateral" => StaircaseModel::Equilateral,
        "lambda" => StaircaseModel::lambda(params.float("lambda"))?,
        "bisect" => StaircaseModel::bisect(params.float("omega_deg").to_radians())?,
        other => unreachable!("model {other} passed validation"),
    })
}

fn staircase_verdict(model: &StaircaseModel, radius: f64) -> CliResult<String> {
    let v = staircase::limit_classify(model, radius)?;
    let limit = match model {
        StaircaseModel::Semicircle => "πR".to_string(),
        StaircaseModel::IsoRight => "2√2R".to_string(),
        StaircaseModel::Equilateral => "4R".to_string(),
        StaircaseModel::Lambda { lambda } => format!("f(λ)R = {}R", f_lambda(*lambda)?),
        StaircaseModel::Bisect { .. } => "2R".to_string(),
    };
    let shape = if v.constant_sequence { "constant" } else { "strictly decreasing" };
    let relation = if v.equals_base { "=" } else { "≠" };
    Ok(format!("{shape} sequence, limit {limit} {relation} 2R"))
}

fn run_staircase(params: &Params, settings: &Settings) -> CliResult<RunOutput> {
    let model = staircase_model(params)?;
    let radius = params.float("R");
    let mut b = Builder {
        params,
        verdict: staircase_verdict(&model, radius)?,
        reports: Vec::new(),
    };
    let (a, z) = (Point::new(0.0, 0.0), Point::new(2.0 * radius, 0.0));
    for n in 1..=params.integer("n") as u32 {
        let it = staircase::build_iteration(&model, radius, n)?;
        let oracle = measure_length(&it.curve);
        let sup = sup_distance_to_segment(&it.curve, a, z, settings.samples_per_primitive)?;
        let gap = staircase::gap_per_step(&model, radius, n)?;
        let height = it.sup_height_closed.eval_float();
        let tol = relative(it.sum_closed.eval_float());
        b.push(
            n,
            "length",
            it.sum_closed,
            oracle,
            tol,
            Some(sup),
            &[("gap_per_step", gap), ("sup_height", height)],
        );
    }
    Ok(b.finish())
}

fn staircase_geometry(params: &Params) -> CliResult<Vec<LabeledCurve>> {
    let model = staircase_model(params)?;
    let radius = params.float("R");
    let n = params.integer("n") as u32;
    let it = staircase::build_iteration(&model, radius, n)?;
    let base = CurveIteration::polyline(0, &[Point::new(0.0, 0.0), Point::new(2.0 * radius, 0.0)])?;
    Ok(vec![label("base", base), label("curve", it.curve)])
}

fn run_koch(params: &Params) -> CliResult<RunOutput> {
    let a = params.float("a");
    let limit = koch::koch_area_limit(a)?;
    let mut b = Builder {
        params,
        verdict: format!(
            "perimeter 3a(4/3)^n diverges; area converges to 2√3a²/5 = {}",
            limit.eval_float()
        ),
        reports: Vec::new(),
    };
    for n in 0..=params.integer("n") as u32 {
        let state = koch::build_koch(a, n)?;
        let perimeter = koch::koch_perimeter(a, n)?;
        let p = perimeter.eval_float();
        b.push(n, "perimeter", perimeter.into(), measure_length(&state.boundary), relative(p), None, &[]);
        let area = koch::koch_area(a, n)?;
        let tail = koch::koch_area_tail(a, n)?.eval_float();
        let v = area.eval_float();
        let measured = measure_polygon_area_float(&state.boundary)?;
        b.push(
            n,
            "area",
            area.into(),
            measured,
            relative(v),
            None,
            &[("area_limit", limit.eval_float()), ("area_tail", tail)],
        );
    }
    Ok(b.finish())
}

fn run_horn(params: &Params) -> CliResult<RunOutput> {
    let upper = params.float("upper");
    let q = HornQuery::new(upper, params.integer("steps") as usize)?;
    let mut b = Builder {
        params,
        verdict: "area ln A diverges as A grows; volume π(1 − 1/A) converges to π".to_string(),
        reports: Vec::new(),
    };
    let area = revolution::area_under_curve(&q)?;
    let area_closed = revolution::area_closed_form(upper)?;
    let tol = area.error_bound + QUADRATURE_ROUNDING * area.analytic.abs().max(1.0);
    b.push(
        0,
        "area",
        area_closed.into(),
        area.numeric,
        tol,
        None,
        &[
            ("error_bound", area.error_bound),
            ("lower_bound", revolution::area_lower_bound(upper)?),
        ],
    );
    let volume = revolution::volume_of_revolution(&q)?;
    let volume_closed = revolution::volume_closed_form(upper)?;
    let tol = volume.error_bound + QUADRATURE_ROUNDING * volume.analytic.abs().max(1.0);
    let limit = revolution::volume_limit().eval_float();
    b.push(
        0,
        "volume",
        volume_closed.into(),
        volume.numeric,
        tol,
        None,
        &[
            ("error_bound", volume.error_bound),
            ("volume_limit", limit),
            ("gap_to_limit", limit - volume.analytic),
        ],
    );
    Ok(b.finish())
}

fn to_float_polygon(poly: &[paradoxlab_core::RationalPoint]) -> Vec<Point> {
    let f = |q: &Rational| ExactValue::rational(q.clone()).eval_float();
    poly.iter().map(|p| Point::new(f(&p.x), f(&p.y))).collect()
}

fn float_piece_sum(ps: &PieceSet) -> f64 {
    ps.pieces.iter().map(|p| shoelace_float(&to_float_polygon(&p.polygon)).abs()).sum()
}

fn exact_piece_sum(ps: &PieceSet) -> CliResult<Rational> {
    let mut sum = Rational::default();
    for p in &ps.pieces {
        sum += shoelace_area_exact(&p.polygon)?.area;
    }
    Ok(sum)
}

/// `F(k−1)F(k+1) − F(k)²` in machine integers, independent of the
/// big-rational path.
fn cassini_oracle(k: u32) -> f64 {
    let mut f = [0i128, 1];
    let mut fib = vec![0i128, 1];
    for _ in 2..=k + 1 {
        f = [f[1], f[0] + f[1]];
        fib.push(f[1]);
    }
    let k = k as usize;
    (fib[k - 1] * fib[k + 1] - fib[k] * fib[k]) as f64
}

fn run_dissection(params: &Params) -> CliResult<RunOutput> {
    let k = params.integer("k") as u32;
    let m = dissection::missing_square_case()?;
    let (first, _) = dissection::missing_square_arrangements();
    let mut b = Builder {
        params,
        verdict: format!(
            "slopes {} and {} differ, so the long side bends; hidden sliver of area {}",
            m.red_slope, m.green_slope, m.sliver_area
        ),
        reports: Vec::new(),
    };
    let exact = |q: &Rational| ClosedForm::from(ExactValue::rational(q.clone()));
    let colored = float_piece_sum(&first);
    b.push(0, "colored_area", exact(&m.colored_area), colored, relative(colored), None, &[]);
    let frame = shoelace_float(&to_float_polygon(&first.frame.polygon)).abs();
    b.push(
        0,
        "claimed_area",
        exact(&m.claimed_area),
        frame,
        relative(frame),
        None,
        &[
            ("red_slope", ExactValue::rational(m.red_slope.clone()).eval_float()),
            ("green_slope", ExactValue::rational(m.green_slope.clone()).eval_float()),
            ("gap_first", ExactValue::rational(m.first.gap.clone()).eval_float()),
            ("gap_second", ExactValue::rational(m.second.gap.clone()).eval_float()),
        ],
    );
    let sliver = [(0.0, 0.0), (8.0, 3.0), (13.0, 5.0), (5.0, 2.0)].map(|(x, y)| Point::new(x, y));
    let sliver = shoelace_float(&sliver).abs();
    b.push(0, "sliver_area", exact(&m.sliver_area), sliver, relative(sliver), None, &[]);

    let fib = dissection::fibonacci_dissection(k)?;
    let (square, rect) = dissection::fibonacci_piece_sets(k)?;
    b.verdict = if fib.rectangle_gains {
        format!("F({})·F({}) − F({})² = +1: the recut pieces leave a unit gap along the diagonal", k - 1, k + 1, k)
    } else {
        format!("F({})·F({}) − F({})² = −1: the recut pieces overlap by a unit along the diagonal", k - 1, k + 1, k)
    };
    let sq = float_piece_sum(&square);
    b.push(k, "square_area", exact(&fib.square_area), sq, relative(sq), None, &[]);
    let frame = shoelace_float(&to_float_polygon(&rect.frame.polygon)).abs();
    let pieces = ExactValue::rational(exact_piece_sum(&rect)?).eval_float();
    b.push(
        k,
        "rectangle_area",
        exact(&fib.rectangle_area),
        frame,
        relative(frame),
        None,
        &[("rectangle_piece_sum", pieces)],
    );
    let oracle = cassini_oracle(k).abs();
    b.push(k, "discrepancy", exact(&fib.discrepancy), oracle, 0.0, None, &[]);
    Ok(b.finish())
}

fn dissection_geometry(k: u32) -> CliResult<Vec<LabeledCurve>> {
    let (first, second) = dissection::missing_square_arrangements();
    let (square, rect) = dissection::fibonacci_piece_sets(k)?;
    let mut out = Vec::new();
    for ps in [&first, &second, &square, &rect] {
        out.push(label(
            &format!("{}/frame", ps.name),
            CurveIteration::closed_polygon(0, &to_float_polygon(&ps.frame.polygon))?,
        ));
        for piece in &ps.pieces {
            out.push(label(
                &format!("{}/{}", ps.name, piece.label),
                CurveIteration::closed_polygon(0, &to_float_polygon(&piece.polygon))?,
            ));
        }
    }
    Ok(out)
}

fn wheel_config(params: &Params) -> CliResult<WheelConfig> {
    Ok(WheelConfig::new(params.float("R"), params.float("rho"), params.integer("steps") as usize)?)
}

fn run_wheel(params: &Params) -> CliResult<RunOutput> {
    let c = wheel_config(params)?;
    let outer = wheel::trace_outer(&c)?;
    let inner = wheel::trace_inner_attached(&c)?;
    let verdict = if c.rho == c.radius {
        "a rim point traces a cycloid; nothing slides".to_string()
    } else {
        "the inner point traces a curtate trochoid, not a cycloid; the inner circle slides 2π(R − ρ)".to_string()
    };
    let mut b = Builder {
        params,
        verdict,
        reports: Vec::new(),
    };
    let (r, rho) = (rational_from_f64(c.radius)?, rational_from_f64(c.rho)?);
    let two = Rational::from_integer(2.into());
    let tau = std::f64::consts::TAU;
    let scale = c.radius.max(1.0);

    let progress = wheel::horizontal_progress(&inner);
    b.push(
        0,
        "slip",
        ExactValue::pi(&two * (&r - &rho)).into(),
        progress - tau * c.rho,
        WHEEL_TOLERANCE * scale,
        None,
        &[
            ("contact_slip_speed", wheel::contact_slip_speed(&c)?),
            ("inner_residual_R", wheel::cycloid_residual(&inner, c.radius)?),
            ("inner_residual_rho", wheel::cycloid_residual(&inner, c.rho)?),
            ("inner_residual_any_phase_R", wheel::cycloid_residual_any_phase(&inner, c.radius)?),
            ("inner_residual_any_phase_rho", wheel::cycloid_residual_any_phase(&inner, c.rho)?),
        ],
    );
    b.push(
        0,
        "horizontal_progress",
        ExactValue::pi(&two * &r).into(),
        progress,
        WHEEL_TOLERANCE * scale,
        None,
        &[("outer_progress", wheel::horizontal_progress(&outer))],
    );
    b.push(
        0,
        "outer_cycloid_residual",
        ExactValue::zero().into(),
        wheel::cycloid_residual(&outer, c.radius)?,
        WHEEL_TOLERANCE * scale,
        None,
        &[],
    );
    Ok(b.finish())
}

fn wheel_geometry(params: &Params) -> CliResult<Vec<LabeledCurve>> {
    let c = wheel_config(params)?;
    let points = |t: Vec<paradoxlab_core::TraceSample>| t.into_iter().map(|s| s.point).collect::<Vec<_>>();
    let outer = points(wheel::trace_outer(&c)?);
    let inner = points(wheel::trace_inner_attached(&c)?);
    let ground = [Point::new(0.0, 0.0), Point::new(std::f64::consts::TAU * c.radius, 0.0)];
    let track = ground.map(|p| Point::new(p.x, c.radius - c.rho));
    let mut curves = vec![label("ground", CurveIteration::polyline(0, &ground)?)];
    if c.rho < c.radius {
        curves.push(label("inner-track", CurveIteration::polyline(0, &track)?));
    }
    curves.push(label("outer", CurveIteration::polyline(0, &outer)?));
    curves.push(label("inner", CurveIteration::polyline(0, &inner)?));
    Ok(curves)
}

/// Profile `y = ±1/x` on `[1, A]`, log-spaced.
fn horn_geometry(upper: f64) -> CliResult<Vec<LabeledCurve>> {
    HornQuery::new(upper, 1)?;
    const POINTS: usize = 256;
    let ln = upper.ln();
    let mut xs: Vec<f64> = (0..=POINTS).map(|i| (ln * i as f64 / POINTS as f64).exp()).collect();
    xs[POINTS] = upper;
    xs.dedup();
    let upper_profile: Vec<Point> = xs.iter().map(|&x| Point::new(x, 1.0 / x)).collect();
    let lower_profile: Vec<Point> = xs.iter().map(|&x| Point::new(x, -1.0 / x)).collect();
    Ok(vec![
        label("profile", CurveIteration::polyline(0, &upper_profile)?),
        label("mirror", CurveIteration::polyline(0, &lower_profile)?),
    ])
}
