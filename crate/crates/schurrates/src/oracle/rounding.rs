use crate::combinat::{majorizes, Frequency, YoungFrame};
use crate::error::{Error, Result};
use crate::Dist;

/// Integer vector with entries near `n·x_i` and total `n`: floors first, then the remaining
/// units go to the largest fractional parts (ties to the lower index).
pub fn largest_remainder(x: &[f64], n: usize) -> Vec<usize> {
    let scaled: Vec<f64> = x.iter().map(|&v| v.max(0.0) * n as f64).collect();
    let mut out: Vec<usize> = scaled.iter().map(|&v| v.floor() as usize).collect();
    let assigned: usize = out.iter().sum();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| {
        let (fi, fj) = (scaled[i] - scaled[i].floor(), scaled[j] - scaled[j].floor());
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    let mut left = n.saturating_sub(assigned);
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        out[i] += 1;
        left -= 1;
    }
    let mut excess = out.iter().sum::<usize>().saturating_sub(n);
    while excess > 0 {
        let i = (0..out.len()).rev().max_by_key(|&i| out[i]).expect("nonempty");
        out[i] -= 1;
        excess -= 1;
    }
    out
}

fn descending_violations(l: &[usize]) -> usize {
    l.windows(2).filter(|w| w[0] < w[1]).count()
}

/// `Σ_k max(0, F_k − Λ_k)` over partial sums of `f↓` and `λ`.
fn dominance_deficit(l: &[usize], f: &[usize]) -> usize {
    let mut fs = f.to_vec();
    fs.sort_unstable_by(|a, b| b.cmp(a));
    let (mut sl, mut sf, mut deficit) = (0usize, 0usize, 0usize);
    for (a, b) in l.iter().zip(&fs) {
        sl += a;
        sf += b;
        deficit += sf.saturating_sub(sl);
    }
    deficit
}

fn distortion(l: &[usize], f: &[usize], s: &[f64], p: &[f64], n: usize) -> f64 {
    let n = n as f64;
    l.iter().zip(s).map(|(&a, &b)| (a as f64 - n * b).abs()).sum::<f64>()
        + f.iter().zip(p).map(|(&a, &b)| (a as f64 - n * b).abs()).sum::<f64>()
}

/// Rounds `(p, s)` to a type `f` and a frame `λ` of size `n` with `λ ⪰ f↓`.
///
/// Largest-remainder rounding is followed by single-box moves that restore a weakly
/// decreasing `λ` and the dominance order, each move chosen to keep the distance to
/// `(n·p, n·s)` smallest.
pub fn frame_rounding(p: &Dist, s: &Dist, n: usize) -> Result<(Frequency, YoungFrame)> {
    let d = p.len();
    if s.len() != d {
        return Err(Error::Dimension(format!("p has {d} entries, s has {}", s.len())));
    }
    if !s.is_descending() {
        return Err(Error::InvalidDistribution("s must be sorted descending".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !majorizes(s.probs(), p.sorted_desc().probs()) {
        return Err(Error::Infeasible(format!("{:?} does not majorize {:?}", s.probs(), p.probs())));
    }
    let mut f = largest_remainder(p.probs(), n);
    let mut l = largest_remainder(s.probs(), n);
    let score = |l: &[usize], f: &[usize]| {
        (descending_violations(l), dominance_deficit(l, f), distortion(l, f, s.probs(), p.probs(), n))
    };
    let mut current = score(&l, &f);
    let mut steps = 0;
    while current.0 > 0 || current.1 > 0 {
        steps += 1;
        if steps > 4 * n * d + 16 {
            return Err(Error::Infeasible(format!("no admissible rounding of size {n}")));
        }
        let mut best: Option<(bool, usize, usize, (usize, usize, f64))> = None;
        for on_frame in [true, false] {
            for from in 0..d {
                for to in 0..d {
                    let v = if on_frame { &l } else { &f };
                    if from == to || v[from] == 0 {
                        continue;
                    }
                    let (mut l2, mut f2) = (l.clone(), f.clone());
                    let w = if on_frame { &mut l2 } else { &mut f2 };
                    w[from] -= 1;
                    w[to] += 1;
                    let sc = score(&l2, &f2);
                    let better = match &best {
                        None => true,
                        Some((_, _, _, b)) => (sc.0, sc.1) < (b.0, b.1) || ((sc.0, sc.1) == (b.0, b.1) && sc.2 < b.2 - 1e-12),
                    };
                    if better {
                        best = Some((on_frame, from, to, sc));
                    }
                }
            }
        }
        let (on_frame, from, to, sc) = best.expect("at least one move exists for n > 0");
        if (sc.0, sc.1) >= (current.0, current.1) {
            return Err(Error::Infeasible(format!("rounding repair stalled at size {n}")));
        }
        let w = if on_frame { &mut l } else { &mut f };
        w[from] -= 1;
        w[to] += 1;
        current = sc;
    }
    Ok((Frequency::new(f)?, YoungFrame::new(l)?))
}
