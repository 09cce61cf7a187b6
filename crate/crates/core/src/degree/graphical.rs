//! Graphicality tests: Erdős–Gallai for simple graphs and Gale–Ryser for
//! bipartite degree sequences (0/1 matrix margins).

/// Checks whether `degrees` is realizable by a simple undirected graph.
///
/// Sorts a copy in decreasing order and verifies the even-sum condition plus
/// the prefix inequalities
/// `sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k)` for `k = 1..=n`.
/// `Err` carries a human-readable reason including the first failing `k`.
///
/// The empty sequence is graphical (the empty graph).
pub fn erdos_gallai(degrees: &[u32]) -> Result<(), String> {
    let mut d: Vec<u64> = degrees.iter().map(|&x| u64::from(x)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: u64 = d.iter().sum();
    if !total.is_multiple_of(2) {
        return Err(format!("degree sum {total} is odd"));
    }

    // suffix[i] = sum of d[i..]
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + d[i];
    }

    let mut prefix = 0u64;
    for k in 1..=n {
        prefix += d[k - 1];
        // Entries with index >= k and value >= k contribute k each; the rest
        // contribute their own value. d is sorted, so the boundary is found
        // by binary search.
        let kk = k as u64;
        let boundary = d.partition_point(|&x| x >= kk).max(k);
        let rhs = kk * (kk - 1) + kk * (boundary - k) as u64 + suffix[boundary];
        if prefix > rhs {
            return Err(format!("prefix inequality fails at k={k}: {prefix} > {rhs}"));
        }
    }
    Ok(())
}

/// Checks whether `(rows, cols)` are realizable as the margins of a 0/1
/// matrix, i.e. as the two sides of a simple bipartite graph.
///
/// Requires equal totals and, with `rows` sorted in decreasing order,
/// `sum_{i<=k} rows_i <= sum_j min(cols_j, k)` for `k = 1..=n_rows`.
pub fn gale_ryser(rows: &[u32], cols: &[u32]) -> Result<(), String> {
    let mut s: Vec<u64> = rows.iter().map(|&x| u64::from(x)).collect();
    let mut t: Vec<u64> = cols.iter().map(|&x| u64::from(x)).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    t.sort_unstable_by(|a, b| b.cmp(a));
    let sum_s: u64 = s.iter().sum();
    let sum_t: u64 = t.iter().sum();
    if sum_s != sum_t {
        return Err(format!("margin totals differ: {sum_s} != {sum_t}"));
    }

    let mut t_suffix = vec![0u64; t.len() + 1];
    for j in (0..t.len()).rev() {
        t_suffix[j] = t_suffix[j + 1] + t[j];
    }

    let mut prefix = 0u64;
    for k in 1..=s.len() {
        prefix += s[k - 1];
        let kk = k as u64;
        let boundary = t.partition_point(|&x| x >= kk);
        let rhs = kk * boundary as u64 + t_suffix[boundary];
        if prefix > rhs {
            return Err(format!("margin inequality fails at k={k}: {prefix} > {rhs}"));
        }
    }
    Ok(())
}
