use super::{BVPath, Node, NondecreasingMap, TIME_TOL};
use crate::error::{Error, Result};

/// `f ∘ h` as a path on `h`'s domain.
///
/// The node set is `h`'s nodes together with the preimages under `h` of the
/// nodes of `f` that `h` crosses continuously; on each resulting cell both
/// `h` and `f` are affine, so the composition is represented exactly.
pub fn compose(f: &BVPath, h: &NondecreasingMap) -> Result<BVPath> {
    let (lo, hi) = h.range();
    if lo < -TIME_TOL || hi > f.horizon() + TIME_TOL {
        return Err(Error::RangeMismatch { lo, hi, horizon: f.horizon() });
    }
    let clamp = |s: f64| s.clamp(0.0, f.horizon());
    let f_times = f.times();
    let hn = h.nodes();
    let mut out: Vec<Node> = Vec::with_capacity(hn.len() + f_times.len());
    for (i, node) in hn.iter().enumerate() {
        let (a, b) = (clamp(node.left[0]), clamp(node.right[0]));
        let right = f.eval(b)?;
        let left = if i == 0 {
            right.clone()
        } else if clamp(hn[i - 1].right[0]) == a {
            // h is flat just before t, so f∘h sits at f(a)
            f.eval(a)?
        } else {
            f.left_limit(a)?
        };
        out.push(Node { t: node.t, left, right });

        let Some(next) = hn.get(i + 1) else { break };
        let (s0, s1) = (b, clamp(next.left[0]));
        if s1 <= s0 {
            continue;
        }
        let first = f_times.partition_point(|&s| s <= s0);
        for &s in f_times[first..].iter().take_while(|&&s| s < s1) {
            let t = node.t + (s - s0) / (s1 - s0) * (next.t - node.t);
            if t > out.last().map_or(f64::NEG_INFINITY, |n| n.t) && t < next.t {
                out.push(Node { t, left: f.left_limit(s)?, right: f.eval(s)? });
            }
        }
    }
    BVPath::new(h.horizon(), out)
}
