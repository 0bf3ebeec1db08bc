//! Digraph isomorphism by backtracking over vertex bijections.
//!
//! Vertices may only map to vertices with the same (outdegree, indegree)
//! pair; arc consistency is checked incrementally against bitmask
//! adjacency rows. Intended for n <= 10.

use crate::digraph::{Digraph, DigraphError};

struct Bitmasks {
    out: Vec<u16>,
    inn: Vec<u16>,
}

fn bitmasks(d: &Digraph) -> Bitmasks {
    let mut out = vec![0u16; d.n()];
    let mut inn = vec![0u16; d.n()];
    for &(u, v) in d.arcs() {
        out[u] |= 1 << v;
        inn[v] |= 1 << u;
    }
    Bitmasks { out, inn }
}

/// True iff some vertex bijection maps the arcs of `a` onto the arcs of
/// `b` exactly.
pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool, DigraphError> {
    let n = a.n();
    if n != b.n() {
        return Err(DigraphError::OrderMismatch(n, b.n()));
    }
    if a.arc_count() != b.arc_count() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    assert!(n <= 10, "isomorphism test capped at n <= 10");

    let da: Vec<(usize, usize)> = a
        .out_degrees()
        .into_iter()
        .zip(a.in_degrees())
        .collect();
    let db: Vec<(usize, usize)> = b
        .out_degrees()
        .into_iter()
        .zip(b.in_degrees())
        .collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }

    let ma = bitmasks(a);
    let mb = bitmasks(b);

    // Map vertices of `a` in order of rarest degree class first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| da.iter().filter(|&&d| d == da[v]).count());

    let mut map = vec![usize::MAX; n];
    let mut used: u16 = 0;
    Ok(backtrack(0, &order, &da, &db, &ma, &mb, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    depth: usize,
    order: &[usize],
    da: &[(usize, usize)],
    db: &[(usize, usize)],
    ma: &Bitmasks,
    mb: &Bitmasks,
    map: &mut [usize],
    used: &mut u16,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for w in 0..db.len() {
        if *used & (1 << w) != 0 || db[w] != da[u] {
            continue;
        }
        // arcs between u and every already-mapped vertex must agree
        let mut ok = true;
        for &p in &order[..depth] {
            let q = map[p];
            if (ma.out[u] >> p) & 1 != (mb.out[w] >> q) & 1
                || (ma.inn[u] >> p) & 1 != (mb.inn[w] >> q) & 1
            {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        map[u] = w;
        *used |= 1 << w;
        if backtrack(depth + 1, order, da, db, ma, mb, map, used) {
            return true;
        }
        *used &= !(1 << w);
        map[u] = usize::MAX;
    }
    false
}
