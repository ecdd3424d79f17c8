//! Small permutation helpers.

/// Advances `xs` to the next permutation in lexicographic order.
/// Returns `false` (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every perfect matching of `0..n` (n even), as involution arrays, in a
/// fixed order: vertex `0`'s partner ascending, then recursively.
pub fn perfect_matchings(n: usize) -> Vec<Vec<u32>> {
    assert!(n.is_multiple_of(2));
    let mut out = Vec::new();
    let mut current = vec![u32::MAX; n];
    fn rec(current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(first) = current.iter().position(|&x| x == u32::MAX) else {
            out.push(current.clone());
            return;
        };
        for partner in first + 1..current.len() {
            if current[partner] == u32::MAX {
                current[first] = partner as u32;
                current[partner] = first as u32;
                rec(current, out);
                current[first] = u32::MAX;
                current[partner] = u32::MAX;
            }
        }
    }
    rec(&mut current, &mut out);
    out
}
