//! Small numerical routines backing the oracles: bracketed golden-section
//! maximization, adaptive Simpson quadrature and central differences.

/// `(√5 − 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `width`. Returns the midpoint of the final bracket.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, width: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // Each iteration shrinks the bracket by 1/φ; 200 is far beyond what any
    // width above f64 resolution needs.
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]` with Richardson
/// correction. The tolerance is split in half at each bisection; recursion
/// stops at `max_depth` regardless.
pub fn adaptive_simpson<F>(f: F, lo: f64, hi: f64, tolerance: f64, max_depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let mid = 0.5 * (lo + hi);
    let (f_lo, f_mid, f_hi) = (f(lo), f(mid), f(hi));
    let whole = simpson(lo, hi, f_lo, f_mid, f_hi);
    let seg = Segment {
        lo,
        hi,
        f_lo,
        f_mid,
        f_hi,
        whole,
    };
    refine(&f, seg, tolerance, max_depth)
}

#[derive(Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
}

fn simpson(lo: f64, hi: f64, f_lo: f64, f_mid: f64, f_hi: f64) -> f64 {
    (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
}

fn refine<F>(f: &F, s: Segment, tolerance: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let mid = 0.5 * (s.lo + s.hi);
    let left_mid = 0.5 * (s.lo + mid);
    let right_mid = 0.5 * (mid + s.hi);
    let (f_lm, f_rm) = (f(left_mid), f(right_mid));
    let left = simpson(s.lo, mid, s.f_lo, f_lm, s.f_mid);
    let right = simpson(mid, s.hi, s.f_mid, f_rm, s.f_hi);
    let delta = left + right - s.whole;
    if depth == 0 || delta.abs() <= 15.0 * tolerance {
        return left + right + delta / 15.0;
    }
    let l = Segment {
        lo: s.lo,
        hi: mid,
        f_lo: s.f_lo,
        f_mid: f_lm,
        f_hi: s.f_mid,
        whole: left,
    };
    let r = Segment {
        lo: mid,
        hi: s.hi,
        f_lo: s.f_mid,
        f_mid: f_rm,
        f_hi: s.f_hi,
        whole: right,
    };
    refine(f, l, 0.5 * tolerance, depth - 1) + refine(f, r, 0.5 * tolerance, depth - 1)
}

/// `(f(x + h) − f(x − h)) / 2h`
pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}
