//! Finite combinatorics: double cosets in `S₃` and local lattice counts.

/// `c[j1-1][j2-1] = |C_{j1} \ S₃ / C_{j2}|` for the cyclic subgroups of
/// order 1, 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCosetTable {
    pub entries: [[u64; 3]; 3],
}

type Perm = [usize; 3];

fn compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn invert(a: &Perm) -> Perm {
    let mut r = [0; 3];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn s3() -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn cyclic(order: usize) -> Vec<Perm> {
    match order {
        1 => vec![[0, 1, 2]],
        2 => vec![[0, 1, 2], [1, 0, 2]],
        3 => vec![[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        _ => unreachable!(),
    }
}

/// Orbits of `C_{j1} × C_{j2}` on `S₃` under `(c1, c2)·g = c1 g c2⁻¹`.
pub fn double_coset_table() -> DoubleCosetTable {
    let g = s3();
    let mut entries = [[0u64; 3]; 3];
    for j1 in 1..=3 {
        for j2 in 1..=3 {
            let (h1, h2) = (cyclic(j1), cyclic(j2));
            let mut seen: Vec<Perm> = Vec::new();
            let mut orbits = 0;
            for x in &g {
                if seen.contains(x) {
                    continue;
                }
                orbits += 1;
                for a in &h1 {
                    for b in &h2 {
                        let y = compose(&compose(a, x), &invert(b));
                        if !seen.contains(&y) {
                            seen.push(y);
                        }
                    }
                }
            }
            entries[j1 - 1][j2 - 1] = orbits;
        }
    }
    DoubleCosetTable { entries }
}

fn strictly_decreasing_sequences(n: u32) -> Vec<u64> {
    // by length w: subsets of {0, …, n}
    let mut by_len = vec![0u64; n as usize + 2];
    for mask in 1u64..(1u64 << (n + 1)) {
        by_len[mask.count_ones() as usize] += 1;
    }
    by_len
}

fn compositions(m: u32, parts: u32) -> u64 {
    if parts == 0 {
        return u64::from(m == 0);
    }
    (1..=m).map(|s| compositions(m - s, parts - 1)).sum()
}

/// Number of pairs `(s̄, t̄)` with `s_1 + … + s_w = m`, `s_i ≥ 1`, and
/// `n ≥ t_1 > … > t_w ≥ 0`.
pub fn count_eichler_lattices(n: u32, m: u32) -> u64 {
    assert!(m >= 1, "multiplicity must be positive");
    assert!(n < 40, "level too large for direct enumeration");
    let seqs = strictly_decreasing_sequences(n);
    (1..=m.min(n + 1))
        .map(|w| seqs[w as usize] * compositions(m, w))
        .sum()
}
