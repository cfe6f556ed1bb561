//! Coordinate models of the irreducible root systems, each paired with an
//! integer functional that vanishes on no root and so picks a positive
//! system.

use super::{dot, RootType};

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `±c·e_i ± c·e_j` for `i < j`.
fn pairs(n: usize, c: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(plus(&unit(n, i, si * c), &unit(n, j, sj * c)));
            }
        }
    }
    out
}

fn descending(c: i64, n: usize) -> Vec<i64> {
    (0..n).map(|i| c - i as i64).collect()
}

/// `(±1, …, ±1)` in dimension `n`, optionally only with an even number of
/// minus signs.
fn half_spin(n: usize, even_only: bool) -> Vec<Vec<i64>> {
    (0u32..1 << n)
        .filter(|m| !even_only || m.count_ones() % 2 == 0)
        .map(|m| (0..n).map(|i| if m & (1 << i) != 0 { -1 } else { 1 }).collect())
        .collect()
}

/// E₈ in doubled coordinates: `±2e_i ± 2e_j` and `(±1, …, ±1)` with an
/// even number of minus signs.
fn e8() -> Vec<Vec<i64>> {
    let mut r = pairs(8, 2);
    r.extend(half_spin(8, true));
    r
}

const E8_FUNCTIONAL: [i64; 8] = [1, 2, 3, 4, 5, 6, 7, 100];

pub(super) fn roots(ty: RootType, rank: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    match ty {
        RootType::A => {
            let n = rank + 1;
            let mut r = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        r.push(plus(&unit(n, i, 1), &unit(n, j, -1)));
                    }
                }
            }
            (r, descending(n as i64, n))
        }
        RootType::B => {
            let mut r = pairs(rank, 1);
            r.extend((0..rank).flat_map(|i| [unit(rank, i, 1), unit(rank, i, -1)]));
            (r, descending(rank as i64, rank))
        }
        RootType::C => {
            let mut r = pairs(rank, 1);
            r.extend((0..rank).flat_map(|i| [unit(rank, i, 2), unit(rank, i, -2)]));
            (r, descending(rank as i64, rank))
        }
        RootType::D => (pairs(rank, 1), descending(rank as i64, rank)),
        RootType::E => {
            let all = e8();
            let w = E8_FUNCTIONAL.to_vec();
            if rank == 8 {
                return (all, w);
            }
            // E₇ is the centralizer of the highest root θ of E₈; E₆ is
            // additionally orthogonal to a root θ′ with ⟨θ,θ′⟩ = −|θ|²/2.
            let theta = all.iter().max_by_key(|r| dot(r, &w)).expect("non-empty").clone();
            let tt = dot(&theta, &theta);
            let mut keep: Vec<Vec<i64>> = all.iter().filter(|r| dot(r, &theta) == 0).cloned().collect();
            if rank == 6 {
                let mut candidates: Vec<&Vec<i64>> = all.iter().filter(|r| 2 * dot(r, &theta) == -tt).collect();
                candidates.sort();
                let theta2 = candidates[0].clone();
                keep.retain(|r| dot(r, &theta2) == 0);
            }
            (keep, w)
        }
        RootType::F => {
            let mut r = pairs(4, 2);
            r.extend((0..4).flat_map(|i| [unit(4, i, 2), unit(4, i, -2)]));
            r.extend(half_spin(4, false));
            (r, vec![8, 4, 2, 1])
        }
        RootType::G => {
            let mut r = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        r.push(plus(&unit(3, i, 1), &unit(3, j, -1)));
                    }
                }
                // ±(2e_i − e_j − e_k)
                let long: Vec<i64> = (0..3).map(|k| if k == i { 2 } else { -1 }).collect();
                r.push(long.iter().map(|x| -x).collect());
                r.push(long);
            }
            (r, vec![3, 1, 0])
        }
    }
}
