//! Globally adaptive quadrature on an embedded 7/15-point Gauss-Kronrod
//! pair, plus a fixed composite pass for integrands whose oscillation
//! budget is known up front.

use std::collections::BinaryHeap;

use super::{Bracket, NumericsError, Tolerance};

/// Kronrod abscissae for the 15-point rule (positive half, centre last).
/// The odd-index entries are the embedded 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 7] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod pass over `[a, b]`: the 15-point estimate and an error
/// bound from the difference against the embedded 7-point result.
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_centre = f(centre);
    let mut kronrod = WGK[7] * f_centre;
    let mut gauss = WG[3] * f_centre;
    for (j, &node) in XGK.iter().enumerate() {
        let dx = half * node;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Fixed composite Kronrod pass over `panels` uniform subintervals.
/// No error control; the caller sizes `panels` from the phase budget.
pub(crate) fn composite_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let width = (b - a) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == panels {
            b
        } else {
            a + (i + 1) as f64 * width
        };
        sum += panel(f, lo, hi).0;
    }
    sum
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    err: f64,
    lo: f64,
    hi: f64,
    val: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.lo == other.lo
    }
}
impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// Worst error first; ties broken on the left endpoint so the refinement
// order, and with it the result, is deterministic.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then(other.lo.total_cmp(&self.lo))
    }
}

/// Integrate `f` over the bracket by globally adaptive interval bisection,
/// refining the subinterval with the largest error estimate until the total
/// estimate drops below `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate_adaptive<F>(f: F, bracket: Bracket, tol: Tolerance) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let (val, err) = panel(&f, bracket.lo, bracket.hi);
    if !val.is_finite() {
        return Err(NumericsError::NonFiniteIntegrand {
            x: 0.5 * (bracket.lo + bracket.hi),
        });
    }
    let mut total = val;
    let mut total_err = err;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        err,
        lo: bracket.lo,
        hi: bracket.hi,
        val,
    });

    for _ in 1..tol.max_subdivisions {
        if total_err <= tol.abs_tol.max(tol.rel_tol * total.abs()) {
            return Ok(total);
        }
        let seg = match heap.pop() {
            Some(seg) => seg,
            None => break,
        };
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            // Interval is already at f64 resolution; it cannot be refined.
            continue;
        }
        let (v1, e1) = panel(&f, seg.lo, mid);
        let (v2, e2) = panel(&f, mid, seg.hi);
        if !(v1 + v2).is_finite() {
            return Err(NumericsError::NonFiniteIntegrand { x: mid });
        }
        total += v1 + v2 - seg.val;
        total_err += e1 + e2 - seg.err;
        heap.push(Segment {
            err: e1,
            lo: seg.lo,
            hi: mid,
            val: v1,
        });
        heap.push(Segment {
            err: e2,
            lo: mid,
            hi: seg.hi,
            val: v2,
        });
    }

    if total_err <= tol.abs_tol.max(tol.rel_tol * total.abs()) {
        Ok(total)
    } else {
        Err(NumericsError::QuadratureNotConverged {
            estimate: total,
            error_bound: total_err,
            max_subdivisions: tol.max_subdivisions,
        })
    }
}
