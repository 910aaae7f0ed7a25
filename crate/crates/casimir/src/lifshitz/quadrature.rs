//! Adaptive Simpson integration for the y-integral of each Matsubara term.

/// Value and error estimate of one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// Accumulated |S_fine − S_coarse| / 15 over accepted panels.
    pub est_error: f64,
    /// True when every panel met its tolerance before the subdivision limit.
    pub converged: bool,
}

struct State<F> {
    f: F,
    est_error: f64,
    converged: bool,
}

/// Geometric seed-panel boundaries as fractions of the interval width.
///
/// A single starting panel can straddle a localized peak with all five
/// initial samples on its flanks, letting the coarse and fine estimates agree
/// by coincidence and the whole peak go missing. The integrands here decay
/// like e^−y over a window of 60, so the seed panels crowd the lower end
/// where the mass sits, guaranteeing samples inside the peak region.
const SEED_SPLITS: [f64; 8] = [
    0.0,
    1.0 / 64.0,
    1.0 / 32.0,
    1.0 / 16.0,
    1.0 / 8.0,
    1.0 / 4.0,
    1.0 / 2.0,
    1.0,
];

/// Integrates `f` over `[a, b]` by adaptive Simpson subdivision starting from
/// geometrically graded seed panels.
///
/// `rel_tol` is relative to the magnitude of the integral itself; the scale is
/// the sum of |seed panel| estimates, so cancelling lobes do not produce an
/// artificially tight target. Panels that still disagree at depth `max_depth`
/// are accepted into the value but flag the outcome as non-converged.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> QuadratureOutcome
where
    F: Fn(f64) -> f64,
{
    debug_assert!(b > a);
    let width = b - a;
    let mut panels = [Panel::default(); SEED_SPLITS.len() - 1];
    let mut fb_prev = f(a);
    for (i, w) in SEED_SPLITS.windows(2).enumerate() {
        let (pa, pb) = (a + w[0] * width, a + w[1] * width);
        let pm = 0.5 * (pa + pb);
        let (fa, fm, fb) = (fb_prev, f(pm), f(pb));
        panels[i] = Panel {
            a: pa,
            b: pb,
            fa,
            fm,
            fb,
            estimate: simpson(pa, pb, fa, fm, fb),
        };
        fb_prev = fb;
    }

    let scale: f64 = panels.iter().map(|p| p.estimate.abs()).sum();
    let tol = (rel_tol * scale + f64::MIN_POSITIVE) / panels.len() as f64;

    let mut state = State {
        f,
        est_error: 0.0,
        converged: true,
    };
    let value = panels
        .into_iter()
        .map(|p| refine(&mut state, p, tol, max_depth))
        .sum();
    QuadratureOutcome {
        value,
        est_error: state.est_error,
        converged: state.converged,
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// One interval with its cached endpoint/midpoint samples and Simpson estimate.
#[derive(Clone, Copy, Default)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    estimate: f64,
}

fn refine<F>(state: &mut State<F>, panel: Panel, tol: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let Panel { a, b, fa, fm, fb, estimate } = panel;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = ((state.f)(lm), (state.f)(rm));
    let left = Panel {
        a,
        b: m,
        fa,
        fm: flm,
        fb: fm,
        estimate: simpson(a, m, fa, flm, fm),
    };
    let right = Panel {
        a: m,
        b,
        fa: fm,
        fm: frm,
        fb,
        estimate: simpson(m, b, fm, frm, fb),
    };
    let fine = left.estimate + right.estimate;
    let diff = fine - estimate;
    if diff.abs() <= 15.0 * tol || depth == 0 {
        state.est_error += diff.abs() / 15.0;
        if diff.abs() > 15.0 * tol {
            state.converged = false;
        }
        return fine + diff / 15.0;
    }
    refine(state, left, 0.5 * tol, depth - 1) + refine(state, right, 0.5 * tol, depth - 1)
}
