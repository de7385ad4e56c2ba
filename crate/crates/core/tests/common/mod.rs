#![allow(dead_code)]

use std::collections::BTreeMap;

use mgs_core::{Arrow, IceQuiver, QuiverError};
use rand::rngs::StdRng;
use rand::Rng;

/// Random ice quiver: up to `max_vertices` vertices in total, at least one
/// mutable, signed multiplicities in `-max_mult..=max_mult`.
pub fn random_ice_quiver(rng: &mut StdRng, max_vertices: usize, max_mult: i32) -> IceQuiver {
    let n_mutable = rng.gen_range(1..=max_vertices);
    let n_frozen = rng.gen_range(0..=max_vertices - n_mutable);
    let dim = n_mutable + n_frozen;
    let mut b = vec![0; dim * dim];
    for i in 0..dim {
        for j in i + 1..dim {
            if i >= n_mutable && j >= n_mutable {
                continue;
            }
            let v = rng.gen_range(-max_mult..=max_mult);
            b[i * dim + j] = v;
            b[j * dim + i] = -v;
        }
    }
    IceQuiver::from_matrix(n_mutable, n_frozen, b).unwrap()
}

/// Random quiver without frozen vertices, framed.
pub fn random_framed(rng: &mut StdRng, max_vertices: usize, max_mult: i32) -> IceQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v: i32 = rng.gen_range(-max_mult..=max_mult);
            if v > 0 {
                arrows.push(Arrow::new(i, j, v as u32));
            } else if v < 0 {
                arrows.push(Arrow::new(j, i, (-v) as u32));
            }
        }
    }
    IceQuiver::new(n, 0, arrows).unwrap().framed().unwrap()
}

/// Skew-symmetry and the zero frozen block, checked entrywise.
pub fn assert_well_formed(q: &IceQuiver) {
    let dim = q.dim();
    for i in 0..dim {
        assert_eq!(q.entry(i, i), 0, "loop at {i}");
        for j in 0..dim {
            assert_eq!(q.entry(i, j), -q.entry(j, i), "not skew-symmetric at ({i},{j})");
            if q.is_frozen(i) && q.is_frozen(j) {
                assert_eq!(q.entry(i, j), 0, "frozen arrow {i}-{j}");
            }
        }
    }
}

/// Mutation by the arrow procedure on an explicit arrow multiset: add a
/// composite arrow for every 2-path through `k`, reverse the arrows at `k`,
/// then remove 2-cycles and arrows between frozen vertices.
pub fn arrow_procedure(q: &IceQuiver, k: usize) -> IceQuiver {
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for a in q.arrows() {
        for _ in 0..a.multiplicity {
            arrows.push((a.source, a.target));
        }
    }
    let incoming: Vec<usize> = arrows.iter().filter(|a| a.1 == k).map(|a| a.0).collect();
    let outgoing: Vec<usize> = arrows.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
    let mut next = Vec::new();
    for &i in &incoming {
        for &j in &outgoing {
            next.push((i, j));
        }
    }
    for &(s, t) in &arrows {
        if s == k || t == k {
            next.push((t, s));
        } else {
            next.push((s, t));
        }
    }
    // cancel opposite pairs one at a time
    let mut count: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (s, t) in next {
        if q.is_frozen(s) && q.is_frozen(t) {
            continue;
        }
        *count.entry((s, t)).or_default() += 1;
    }
    let mut out = Vec::new();
    for (&(s, t), &m) in &count {
        let back = count.get(&(t, s)).copied().unwrap_or(0);
        if m > back {
            out.push(Arrow::new(s, t, (m - back) as u32));
        }
    }
    IceQuiver::new(q.n_mutable(), q.n_frozen(), out).unwrap()
}

pub struct WalkStats {
    pub steps: usize,
    pub color_checks: usize,
    pub persistence_checks: usize,
}

/// A random mutation walk from `start` checking well-formedness,
/// sign-coherence and persistence of non-adjacent colors at every step.
pub fn checked_walk(rng: &mut StdRng, start: &IceQuiver, len: usize) -> Result<WalkStats, String> {
    let mut q = start.clone();
    let mut stats = WalkStats {
        steps: 0,
        color_checks: 0,
        persistence_checks: 0,
    };
    let mut colors = q.color_vector().map_err(|e| format!("initial: {e}"))?;
    for step in 0..len {
        let k = rng.gen_range(0..q.n_mutable());
        let next = match q.mutate(k) {
            Ok(n) => n,
            Err(QuiverError::IntegerOverflow) => return Err(format!("overflow at step {step}")),
            Err(e) => return Err(e.to_string()),
        };
        assert_well_formed(&next);
        let next_colors = next
            .color_vector()
            .map_err(|e| format!("step {step} at {k}: {e}"))?;
        stats.color_checks += next_colors.len();
        for j in 0..q.n_mutable() {
            if j != k && q.entry(j, k) == 0 {
                stats.persistence_checks += 1;
                if colors[j] != next_colors[j] {
                    return Err(format!("vertex {j} changed color at step {step} (mutated {k}, not adjacent)"));
                }
            }
        }
        q = next;
        colors = next_colors;
        stats.steps += 1;
    }
    Ok(stats)
}

/// Colors computed directly from the frozen columns: `Some(true)` green,
/// `Some(false)` red, `None` when undefined.
pub fn oracle_colors(q: &IceQuiver) -> Vec<Option<bool>> {
    (0..q.n_mutable())
        .map(|k| {
            let into_k = (q.n_mutable()..q.dim()).any(|j| q.entry(j, k) > 0);
            let out_of_k = (q.n_mutable()..q.dim()).any(|j| q.entry(k, j) > 0);
            match (into_k, out_of_k) {
                (false, true) => Some(true),
                (true, false) => Some(false),
                _ => None,
            }
        })
        .collect()
}

/// Replays `steps` with the arrow procedure and the direct color rule;
/// returns true when every step is green and the end is all red.
pub fn oracle_is_maximal_green(q: &IceQuiver, steps: &[usize]) -> bool {
    let mut cur = q.clone();
    for &k in steps {
        if oracle_colors(&cur)[k] != Some(true) {
            return false;
        }
        cur = arrow_procedure(&cur, k);
    }
    oracle_colors(&cur).iter().all(|c| *c == Some(false))
}

/// The full torus sequence spelled out from its definition in label form.
pub fn spelled_theorem_sequence(n: usize) -> Vec<String> {
    let f = |i: usize| format!("f_{i}");
    let mut out: Vec<String> = (1..=n).rev().map(f).collect();
    out.extend((3..=n).map(f));
    for i in (1..=n).rev() {
        out.extend("edbcabdecab".chars().map(|c| format!("{c}_{i}")));
    }
    out.extend((3..=n).map(f));
    out.extend([f(2), f(1)]);
    out.extend((3..=n).rev().map(f));
    for i in (1..=n).rev() {
        out.extend("ebacedbae".chars().map(|c| format!("{c}_{i}")));
    }
    out
}

fn parse_arrow(spec: &str) -> (String, String, u32) {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let mult = match parts[1] {
        "->" => 1,
        "=>" => 2,
        other => panic!("bad arrow {other}"),
    };
    (parts[0].to_string(), parts[2].to_string(), mult)
}

fn block_text(template: &str, i: usize, prev: usize, cur: usize) -> String {
    template
        .replace("{p}", &prev.to_string())
        .replace("{c}", &cur.to_string())
        .replace("{i}", &i.to_string())
}

/// Arrows expected after `σ_i`, written against labels. `prev` and `cur`
/// are the block numbers of the f vertices bordering block `i` at that
/// point of the run.
pub fn sigma_arrows_by_label(i: usize, prev: usize, cur: usize) -> (Vec<String>, Vec<(String, String, u32)>) {
    let vertices = "a_{i} b_{i} c_{i} d_{i} e_{i} f_{p} f_{c} a'_{i} b'_{i} c'_{i} d'_{i} e'_{i} f'_{i}";
    let arrows = [
        "e_{i} -> d_{i}",
        "b_{i} -> e_{i}",
        "e_{i} -> f_{p}",
        "f_{c} -> e_{i}",
        "e'_{i} -> e_{i}",
        "f'_{i} -> e_{i}",
        "d_{i} -> c_{i}",
        "c_{i} => a_{i}",
        "b_{i} -> c_{i}",
        "c'_{i} -> c_{i}",
        "a_{i} -> d_{i}",
        "d_{i} -> b_{i}",
        "a'_{i} -> d_{i}",
        "a_{i} -> b_{i}",
        "b'_{i} -> a_{i}",
        "d'_{i} -> b_{i}",
        "f_{p} -> f_{c}",
        "f_{p} -> f'_{i}",
        "f_{p} => e'_{i}",
        "f_{p} => c'_{i}",
        "f_{p} => d'_{i}",
        "f_{p} => a'_{i}",
        "f_{p} => b'_{i}",
    ];
    (
        block_text(vertices, i, prev, cur).split_whitespace().map(String::from).collect(),
        arrows.iter().map(|a| parse_arrow(&block_text(a, i, prev, cur))).collect(),
    )
}

/// Arrows expected after `τ_i`, written against labels.
pub fn tau_arrows_by_label(i: usize, prev: usize) -> (Vec<String>, Vec<(String, String, u32)>) {
    let vertices = "a_{i} b_{i} c_{i} d_{i} e_{i} f_{p} f_{i} a'_{i} b'_{i} c'_{i} d'_{i} e'_{i}";
    let arrows = [
        "c_{i} -> e_{i}",
        "e_{i} -> a_{i}",
        "f_{p} -> e_{i}",
        "e_{i} -> f_{i}",
        "e'_{i} -> e_{i}",
        "d_{i} -> c_{i}",
        "a_{i} -> c_{i}",
        "c_{i} -> b_{i}",
        "d'_{i} -> c_{i}",
        "d_{i} -> a_{i}",
        "b_{i} => d_{i}",
        "b'_{i} -> d_{i}",
        "a_{i} -> b_{i}",
        "a'_{i} -> a_{i}",
        "c'_{i} -> b_{i}",
        "f_{i} -> f_{p}",
    ];
    (
        block_text(vertices, i, prev, i).split_whitespace().map(String::from).collect(),
        arrows.iter().map(|a| parse_arrow(&block_text(a, i, prev, i))).collect(),
    )
}

/// Compares the arrows of `q` among the named vertices with `expected`.
pub fn local_arrows_match(
    q: &IceQuiver,
    labels: &mgs_core::LabelMap,
    vertices: &[String],
    expected: &[(String, String, u32)],
) -> Result<(), String> {
    let idx: Vec<usize> = vertices
        .iter()
        .map(|v| labels.index(v).ok_or_else(|| format!("no vertex {v}")))
        .collect::<Result<_, _>>()?;
    let mut want: Vec<(usize, usize, u32)> = expected
        .iter()
        .map(|(s, t, m)| (labels.index(s).unwrap(), labels.index(t).unwrap(), *m))
        .collect();
    want.sort();
    let mut got = Vec::new();
    for &s in &idx {
        for &t in &idx {
            let e = q.entry(s, t);
            if e > 0 {
                got.push((s, t, e as u32));
            }
        }
    }
    got.sort();
    if got == want {
        Ok(())
    } else {
        let show = |v: &[(usize, usize, u32)]| {
            v.iter()
                .map(|&(s, t, m)| format!("{}->{}x{m}", labels.name(s).unwrap(), labels.name(t).unwrap()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        Err(format!("expected [{}], found [{}]", show(&want), show(&got)))
    }
}

/// Block number of the f vertex standing at position `j` after the cycle
/// segment (f_1 and f_2 swapped).
pub fn transposed(j: usize) -> usize {
    match j {
        1 => 2,
        2 => 1,
        j => j,
    }
}
