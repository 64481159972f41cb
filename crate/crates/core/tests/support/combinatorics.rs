//! Brute-force enumeration of set partitions and permutations, used to
//! cross-check the classical (λ = 0) Stirling numbers.

/// `counts[b]` is the number of partitions of `{0, .., n-1}` into `b` blocks
/// in which the elements `0, .., r-1` lie in distinct blocks.
pub fn restricted_partitions(n: usize, r: usize) -> Vec<u64> {
    fn go(i: usize, n: usize, r: usize, blocks: usize, counts: &mut [u64]) {
        if i == n {
            counts[blocks] += 1;
            return;
        }
        // restricted growth string: element i joins an open block or opens one
        let lowest = if i < r { blocks } else { 0 };
        for b in lowest..=blocks {
            go(i + 1, n, r, blocks.max(b + 1), counts);
        }
    }
    let mut counts = vec![0; n + 1];
    go(0, n, r.min(n), 0, &mut counts);
    counts
}

/// `counts[c]` is the number of permutations of `{0, .., n-1}` with `c`
/// cycles in which the elements `0, .., r-1` lie in distinct cycles.
pub fn restricted_cycle_counts(n: usize, r: usize) -> Vec<u64> {
    let mut counts = vec![0; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut cycle_of = vec![0usize; n];
    loop {
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle_of[j] = cycles;
                j = perm[j];
            }
            cycles += 1;
        }
        let specials_apart = (0..r.min(n)).all(|a| (0..a).all(|b| cycle_of[a] != cycle_of[b]));
        if specials_apart {
            counts[cycles] += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    counts
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
