use crate::rat::Rat;
use crate::step::StepFunction;
use crate::transform::Transformation;

/// The transfer operator `T*`, adjoint of `f ↦ f∘T`:
/// `(T*f)(y) = Σ f(b⁻¹(y)) / |slope_b|` over branches whose image contains `y`.
///
/// Each branch contributes one constant piece per piece of `f` it meets;
/// the contributions are summed with a sweep over their endpoints.
pub fn transfer_apply<T: Transformation + ?Sized>(map: &T, f: &StepFunction) -> StepFunction {
    let branches = map.branches();
    let bps = f.breakpoints();
    let mut events: Vec<(Rat, Rat)> = Vec::new();
    for b in branches.iter() {
        let weight = b.slope.abs().recip();
        let first = f.piece_index(b.source.lo());
        for i in first..f.piece_count() {
            let lo = (&bps[i]).max(b.source.lo());
            let hi = (&bps[i + 1]).min(b.source.hi());
            if lo >= hi {
                break;
            }
            let v = &f.values()[i];
            if v.is_zero() {
                continue;
            }
            let (ylo, yhi) = b.image_of(lo, hi);
            let w = v * &weight;
            events.push((ylo, w.clone()));
            events.push((yhi, -w));
        }
    }
    events.push((Rat::one(), Rat::zero()));
    events.sort_by(|a, b| a.0.cmp(&b.0));

    let mut pieces = Vec::new();
    let mut at = Rat::zero();
    let mut level = Rat::zero();
    let mut i = 0;
    while i < events.len() {
        let y = events[i].0.clone();
        if y > at {
            pieces.push((at, y.clone(), level.clone()));
            at = y.clone();
        }
        while i < events.len() && events[i].0 == y {
            level += &events[i].1;
            i += 1;
        }
    }
    StepFunction::from_sorted_pieces(pieces)
}

/// `dist(f, rg T)²`. The Koopman operator is an isometry, so its range is
/// closed with orthogonal projection `T T*`, giving `‖f‖² - ‖T*f‖²`.
pub fn range_distance_sq<T: Transformation + ?Sized>(map: &T, f: &StepFunction) -> Rat {
    f.norm_sq() - transfer_apply(map, f).norm_sq()
}
