//! Independent oracles shared by the integration tests.

use std::collections::BTreeMap;

use hecke_tqft::diagrams::YoungDiagram;

/// Littlewood–Richardson coefficients c^ν_{λμ} by enumerating LR fillings
/// of ν/λ with content μ.
pub fn lr(lambda: &YoungDiagram, mu: &YoungDiagram, nu: &YoungDiagram) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    // skew cells in reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for i in 1..=nu.num_rows() {
        for j in (lambda.row(i) + 1..=nu.row(i)).rev() {
            cells.push((i as u32, j));
        }
    }
    let mut filling: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut counts = vec![0u32; mu.num_rows() + 1];
    fn rec(
        idx: usize,
        cells: &[(u32, u32)],
        mu: &YoungDiagram,
        filling: &mut BTreeMap<(u32, u32), u32>,
        counts: &mut Vec<u32>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        let mut total = 0;
        for v in 1..=mu.num_rows() as u32 {
            if counts[v as usize] >= mu.row(v as usize) {
                continue;
            }
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            if let Some(&r) = filling.get(&(i, j + 1)) {
                if v > r {
                    continue;
                }
            }
            if let Some(&u) = filling.get(&(i - 1, j)) {
                if v <= u {
                    continue;
                }
            }
            filling.insert((i, j), v);
            counts[v as usize] += 1;
            total += rec(idx + 1, cells, mu, filling, counts);
            counts[v as usize] -= 1;
            filling.remove(&(i, j));
        }
        total
    }
    rec(0, &cells, mu, &mut filling, &mut counts)
}

/// SU(N) fusion without level truncation: LR products with at most N rows,
/// full columns removed.
pub fn su_tensor(n: u32, lambda: &YoungDiagram, mu: &YoungDiagram) -> BTreeMap<YoungDiagram, u64> {
    let size = lambda.size() + mu.size();
    let mut out = BTreeMap::new();
    for nu in hecke_tqft::diagrams::diagrams_in_box(n, size) {
        if nu.size() != size {
            continue;
        }
        let c = lr(lambda, mu, &nu);
        if c == 0 {
            continue;
        }
        let strip = if nu.num_rows() == n as usize { nu.row(n as usize) } else { 0 };
        let reduced = YoungDiagram::new(nu.rows().iter().map(|r| r - strip).filter(|&r| r > 0).collect()).unwrap();
        *out.entry(reduced).or_insert(0) += c;
    }
    out
}
