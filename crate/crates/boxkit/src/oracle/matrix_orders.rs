//! Exact minimum rectangle cover of a boolean matrix's 1-cells, for a fixed
//! matrix and minimized over all row and column orders.
//!
//! The ordering search is a complete two-level depth-first search: row-order
//! prefixes first, then column-order prefixes, with exact cover evaluation at
//! the leaves. At every node it builds a sound compatibility relation over
//! 1-cells: a pair is compatible only if some all-1 box could still cover
//! both cells in some completion of the current prefix. Pairwise-incompatible
//! cells need pairwise-distinct boxes in every completion, so an incompatible
//! set at least as large as the best cover found so far prunes the subtree.
//! Zero rows/columns are stripped and duplicate rows/columns merged up front;
//! neither changes the minimum.

use super::setcover::exact_min_cover_u64;
use super::OracleLimits;
use crate::error::{Error, Result};
use crate::instances::BoolMatrix;
use std::collections::HashMap;
use std::time::Instant;

fn range_mask(lo: usize, hi: usize) -> u64 {
    debug_assert!(lo <= hi && hi < 64);
    let upper = if hi == 63 {
        !0u64
    } else {
        (1u64 << (hi + 1)) - 1
    };
    upper & !((1u64 << lo) - 1)
}

/// Cell masks of the maximal all-1 rectangles (contiguous row and column
/// intervals) of a fixed matrix, over the given cell numbering.
fn maximal_rect_masks(
    rowmask: &[u64],
    cols: usize,
    cell_idx: &HashMap<(usize, usize), usize>,
) -> Vec<u64> {
    let rows = rowmask.len();
    let mut out = Vec::new();
    for r1 in 0..rows {
        let mut acc = rowmask[r1];
        for r2 in r1..rows {
            acc &= rowmask[r2];
            if acc == 0 {
                break;
            }
            // maximal runs of ones in acc
            let mut c = 0;
            while c < cols {
                if acc >> c & 1 == 0 {
                    c += 1;
                    continue;
                }
                let c1 = c;
                while c < cols && acc >> c & 1 == 1 {
                    c += 1;
                }
                let c2 = c - 1;
                let run = range_mask(c1, c2);
                let up_blocked = r1 == 0 || rowmask[r1 - 1] & run != run;
                let down_blocked = r2 == rows - 1 || rowmask[r2 + 1] & run != run;
                if up_blocked && down_blocked {
                    let mut mask = 0u64;
                    for rr in r1..=r2 {
                        for cc in c1..=c2 {
                            mask |= 1u64 << cell_idx[&(rr, cc)];
                        }
                    }
                    out.push(mask);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn cover_of_fixed(
    rowmask: &[u64],
    cols: usize,
    cap: usize,
    deadline: Option<Instant>,
) -> Result<usize> {
    let mut cell_idx = HashMap::new();
    for (r, &m) in rowmask.iter().enumerate() {
        for c in 0..cols {
            if m >> c & 1 == 1 {
                let n = cell_idx.len();
                cell_idx.insert((r, c), n);
            }
        }
    }
    let n_cells = cell_idx.len();
    if n_cells == 0 {
        return Ok(0);
    }
    if n_cells > 63 {
        return Err(Error::LimitExceeded(format!(
            "matrix cover supports at most 63 one-cells, got {n_cells}"
        )));
    }
    let cands = maximal_rect_masks(rowmask, cols, &cell_idx);
    let full = if n_cells == 63 {
        (1u64 << 63) | ((1u64 << 63) - 1)
    } else {
        (1u64 << n_cells) - 1
    };
    exact_min_cover_u64(&cands, full, cap, deadline)
}

fn rowmasks_of(m: &BoolMatrix) -> Vec<u64> {
    (0..m.rows())
        .map(|r| {
            let mut mask = 0u64;
            for c in 0..m.cols() {
                if m.get(r, c) {
                    mask |= 1u64 << c;
                }
            }
            mask
        })
        .collect()
}

/// Exact minimum number of all-1 boxes covering the 1-cells of `m` as given.
pub fn matrix_min_cover_fixed(m: &BoolMatrix, limits: &OracleLimits) -> Result<usize> {
    if m.cols() > 63 {
        return Err(Error::LimitExceeded(format!(
            "matrix cover supports at most 63 columns, got {}",
            m.cols()
        )));
    }
    cover_of_fixed(
        &rowmasks_of(m),
        m.cols(),
        usize::MAX,
        Some(limits.deadline()),
    )
}

struct Reduction {
    /// Reduced line index -> original member lines, in both axes.
    row_members: Vec<Vec<usize>>,
    col_members: Vec<Vec<usize>>,
    zero_rows: Vec<usize>,
    zero_cols: Vec<usize>,
    reduced: BoolMatrix,
}

/// Strip all-zero lines and merge duplicate lines until stable. Adjacent
/// duplicates and mid-matrix zero lines never help a cover, so the reduced
/// matrix has the same minimum over orders.
fn reduce(m: &BoolMatrix) -> Reduction {
    let mut active_rows: Vec<Vec<usize>> = (0..m.rows()).map(|r| vec![r]).collect();
    let mut active_cols: Vec<Vec<usize>> = (0..m.cols()).map(|c| vec![c]).collect();
    let mut zero_rows = Vec::new();
    let mut zero_cols = Vec::new();
    loop {
        let mut changed = false;
        // rows keyed by their pattern over active column representatives
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut next_rows: Vec<Vec<usize>> = Vec::new();
        for group in active_rows.drain(..) {
            let rep = group[0];
            let key: Vec<bool> = active_cols.iter().map(|cg| m.get(rep, cg[0])).collect();
            if key.iter().all(|&b| !b) {
                zero_rows.extend_from_slice(&group);
                changed = true;
            } else if let Some(&at) = seen.get(&key) {
                next_rows[at].extend_from_slice(&group);
                changed = true;
            } else {
                seen.insert(key, next_rows.len());
                next_rows.push(group);
            }
        }
        active_rows = next_rows;

        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut next_cols: Vec<Vec<usize>> = Vec::new();
        for group in active_cols.drain(..) {
            let rep = group[0];
            let key: Vec<bool> = active_rows.iter().map(|rg| m.get(rg[0], rep)).collect();
            if key.iter().all(|&b| !b) {
                zero_cols.extend_from_slice(&group);
                changed = true;
            } else if let Some(&at) = seen.get(&key) {
                next_cols[at].extend_from_slice(&group);
                changed = true;
            } else {
                seen.insert(key, next_cols.len());
                next_cols.push(group);
            }
        }
        active_cols = next_cols;
        if !changed {
            break;
        }
    }
    let mut reduced = BoolMatrix::new(active_rows.len(), active_cols.len());
    for (ri, rg) in active_rows.iter().enumerate() {
        for (ci, cg) in active_cols.iter().enumerate() {
            reduced.set(ri, ci, m.get(rg[0], cg[0]));
        }
    }
    Reduction {
        row_members: active_rows,
        col_members: active_cols,
        zero_rows,
        zero_cols,
        reduced,
    }
}

/// Greedy pairwise-incompatible set size (min-degree heuristic).
fn greedy_incompatible(adj: &[u64], mut cands: u64) -> usize {
    let mut count = 0;
    while cands != 0 {
        let mut best_v = usize::MAX;
        let mut best_deg = u32::MAX;
        let mut scan = cands;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (adj[v] & cands).count_ones();
            if deg < best_deg {
                best_deg = deg;
                best_v = v;
            }
        }
        count += 1;
        cands &= !(adj[best_v] | (1u64 << best_v));
    }
    count
}

/// Bounded exact search for an independent set of size `k` in the
/// compatibility graph; gives up (returns false) when the budget runs out,
/// which only weakens pruning, never soundness.
fn find_incompatible_set(adj: &[u64], cands: u64, k: usize, budget: &mut u32) -> bool {
    if k == 0 {
        return true;
    }
    if (cands.count_ones() as usize) < k {
        return false;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    // pivot on the highest-degree candidate
    let mut pivot = usize::MAX;
    let mut deg_best = 0u32;
    let mut scan = cands;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let deg = (adj[v] & cands).count_ones();
        if pivot == usize::MAX || deg > deg_best {
            deg_best = deg;
            pivot = v;
        }
    }
    let vbit = 1u64 << pivot;
    if find_incompatible_set(adj, cands & !(adj[pivot] | vbit), k - 1, budget) {
        return true;
    }
    find_incompatible_set(adj, cands & !vbit, k, budget)
}

struct OrderSearch {
    rows: usize,
    cols: usize,
    rowmask: Vec<u64>,
    cells: Vec<(usize, usize)>,
    best: usize,
    best_orders: (Vec<usize>, Vec<usize>),
    deadline: Instant,
    nodes: u64,
    row_nodes: u64,
    col_nodes: u64,
    leaves: u64,
    mis_prunes: u64,
    interval_prunes: u64,
}

impl OrderSearch {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && Instant::now() > self.deadline {
            return Err(Error::LimitExceeded(
                "time budget exhausted in matrix ordering search".into(),
            ));
        }
        Ok(())
    }

    fn all_cells_mask(&self) -> u64 {
        if self.cells.len() == 64 {
            !0u64
        } else {
            (1u64 << self.cells.len()) - 1
        }
    }

    fn prune(&self, adj: &[u64]) -> bool {
        let all = self.all_cells_mask();
        if greedy_incompatible(adj, all) >= self.best {
            return true;
        }
        let mut budget = 20_000u32;
        find_incompatible_set(adj, all, self.best, &mut budget)
    }

    /// Relaxed-cover lower bound for the row phase: every box any completion
    /// can use has its cells inside one of these candidates. A candidate per
    /// placed row interval takes the cells whose columns are all-1 across it;
    /// intervals touching the prefix end also grab every compatible unplaced
    /// cell, and one candidate holds all unplaced cells. If even this relaxed
    /// instance needs `best` boxes, no completion can beat `best`.
    fn row_phase_interval_prune(
        &self,
        row_pos: &[usize],
        placed: usize,
        zmask: &[u64],
    ) -> Result<bool> {
        let mut cells_at_pos = vec![0u64; placed];
        let mut cells_in_col = vec![0u64; self.cols];
        let mut unplaced_in_col = vec![0u64; self.cols];
        let mut unplaced_all = 0u64;
        for (i, &(r, c)) in self.cells.iter().enumerate() {
            let bit = 1u64 << i;
            cells_in_col[c] |= bit;
            if row_pos[r] != usize::MAX {
                cells_at_pos[row_pos[r]] |= bit;
            } else {
                unplaced_in_col[c] |= bit;
                unplaced_all |= bit;
            }
        }
        let mut cands: Vec<u64> = Vec::with_capacity(placed * placed / 2 + placed + 2);
        cands.push(unplaced_all);
        for a in 0..placed {
            let mut pos_union = 0u64;
            for b in a..placed {
                pos_union |= cells_at_pos[b];
                let span = range_mask(a, b);
                let mut mask = 0u64;
                let mut future = 0u64;
                for c in 0..self.cols {
                    if zmask[c] & span == 0 {
                        mask |= cells_in_col[c];
                        future |= unplaced_in_col[c];
                    }
                }
                mask &= pos_union;
                if b == placed - 1 {
                    mask |= future;
                }
                if mask != 0 {
                    cands.push(mask);
                }
            }
        }
        cands.sort_unstable();
        cands.dedup();
        let full = self.all_cells_mask();
        let mut union = 0u64;
        for &c in &cands {
            union |= c;
        }
        if union != full {
            // some cell is uncoverable under the relaxation; cannot happen
            // for real instances, but be conservative
            return Ok(false);
        }
        let lb = exact_min_cover_u64(&cands, full, self.best, Some(self.deadline))?;
        Ok(lb >= self.best)
    }

    /// Same idea once rows are fixed and columns are partially placed:
    /// candidates are maximal runs of placed columns that stay all-1 across a
    /// row interval, runs touching the prefix end extended by compatible
    /// unplaced columns, and per-interval all-future candidates.
    fn col_phase_interval_prune(
        &self,
        row_pos_of_cell: &[usize],
        colzero: &[u64],
        col_order: &[usize],
        col_pos: &[usize],
    ) -> Result<bool> {
        let placed = col_order.len();
        let mut cells_at_rowpos_cum: Vec<u64> = vec![0u64; self.rows];
        for (i, &rp) in row_pos_of_cell.iter().enumerate() {
            cells_at_rowpos_cum[rp] |= 1u64 << i;
        }
        let mut cells_in_col = vec![0u64; self.cols];
        for (i, &(_, c)) in self.cells.iter().enumerate() {
            cells_in_col[c] |= 1u64 << i;
        }
        let unplaced_cols: Vec<usize> = (0..self.cols)
            .filter(|&c| col_pos[c] == usize::MAX)
            .collect();
        let mut cands: Vec<u64> = Vec::new();
        for rl in 0..self.rows {
            let mut rowspan_cells = 0u64;
            for rh in rl..self.rows {
                rowspan_cells |= cells_at_rowpos_cum[rh];
                if rowspan_cells == 0 {
                    continue;
                }
                let span = range_mask(rl, rh);
                let allone = |c: usize| colzero[c] & span == 0;
                let mut future_cols_cells = 0u64;
                for &c in &unplaced_cols {
                    if allone(c) {
                        future_cols_cells |= cells_in_col[c];
                    }
                }
                // maximal valid runs over placed column positions
                let mut q = 0;
                while q < placed {
                    if !allone(col_order[q]) {
                        q += 1;
                        continue;
                    }
                    let mut mask = 0u64;
                    while q < placed && allone(col_order[q]) {
                        mask |= cells_in_col[col_order[q]];
                        q += 1;
                    }
                    if q == placed {
                        mask |= future_cols_cells; // run reaches the prefix end
                    }
                    mask &= rowspan_cells;
                    if mask != 0 {
                        cands.push(mask);
                    }
                }
                let future_only = future_cols_cells & rowspan_cells;
                if future_only != 0 {
                    cands.push(future_only);
                }
            }
        }
        cands.sort_unstable();
        cands.dedup();
        let full = self.all_cells_mask();
        let mut union = 0u64;
        for &c in &cands {
            union |= c;
        }
        if union != full {
            return Ok(false);
        }
        let lb = exact_min_cover_u64(&cands, full, self.best, Some(self.deadline))?;
        Ok(lb >= self.best)
    }

    /// Compatibility while rows are being placed and columns are free.
    fn row_phase_adj(&self, row_pos: &[usize], placed: usize, zmask: &[u64]) -> Vec<u64> {
        let n = self.cells.len();
        let mut adj = vec![0u64; n];
        for i in 0..n {
            let (ri, ci) = self.cells[i];
            for j in (i + 1)..n {
                let (rj, cj) = self.cells[j];
                let pi = row_pos[ri];
                let pj = row_pos[rj];
                let compatible = match (pi != usize::MAX, pj != usize::MAX) {
                    (true, true) => {
                        let lo = pi.min(pj);
                        let hi = pi.max(pj);
                        let span = range_mask(lo, hi);
                        zmask[ci] & span == 0 && zmask[cj] & span == 0
                    }
                    (true, false) | (false, true) => {
                        let (p, unplaced_row, pc, uc) = if pi != usize::MAX {
                            (pi, rj, ci, cj)
                        } else {
                            (pj, ri, cj, ci)
                        };
                        let span = range_mask(p, placed - 1);
                        zmask[pc] & span == 0
                            && zmask[uc] & span == 0
                            && self.rowmask[unplaced_row] >> pc & 1 == 1
                    }
                    (false, false) => {
                        self.rowmask[ri] >> cj & 1 == 1 && self.rowmask[rj] >> ci & 1 == 1
                    }
                };
                if compatible {
                    adj[i] |= 1u64 << j;
                    adj[j] |= 1u64 << i;
                }
            }
        }
        adj
    }

    fn dfs_rows(
        &mut self,
        order: &mut Vec<usize>,
        row_pos: &mut Vec<usize>,
        zmask: &[u64],
    ) -> Result<()> {
        self.tick()?;
        self.row_nodes += 1;
        let adj = self.row_phase_adj(row_pos, order.len(), zmask);
        if self.prune(&adj) {
            self.mis_prunes += 1;
            return Ok(());
        }
        if self.row_phase_interval_prune(row_pos, order.len(), zmask)? {
            self.interval_prunes += 1;
            return Ok(());
        }
        if order.len() == self.rows {
            return self.search_cols(order);
        }
        for r in 0..self.rows {
            if row_pos[r] != usize::MAX {
                continue;
            }
            let k = order.len();
            order.push(r);
            row_pos[r] = k;
            let mut z2 = zmask.to_vec();
            for (c, z) in z2.iter_mut().enumerate() {
                if self.rowmask[r] >> c & 1 == 0 {
                    *z |= 1u64 << k;
                }
            }
            self.dfs_rows(order, row_pos, &z2)?;
            order.pop();
            row_pos[r] = usize::MAX;
        }
        Ok(())
    }

    fn search_cols(&mut self, row_order: &[usize]) -> Result<()> {
        // per column, the row positions holding a zero
        let mut colzero = vec![0u64; self.cols];
        for (p, &r) in row_order.iter().enumerate() {
            for (c, z) in colzero.iter_mut().enumerate() {
                if self.rowmask[r] >> c & 1 == 0 {
                    *z |= 1u64 << p;
                }
            }
        }
        let row_pos_of_cell: Vec<usize> = self
            .cells
            .iter()
            .map(|&(r, _)| row_order.iter().position(|&x| x == r).expect("row placed"))
            .collect();
        let mut col_pos = vec![usize::MAX; self.cols];
        let mut order = Vec::with_capacity(self.cols);
        self.dfs_cols(
            row_order,
            &row_pos_of_cell,
            &colzero,
            &mut order,
            &mut col_pos,
        )
    }

    /// Compatibility once rows are fixed and columns are being placed.
    fn col_phase_adj(
        &self,
        row_pos_of_cell: &[usize],
        colzero: &[u64],
        col_order: &[usize],
        col_pos: &[usize],
    ) -> Vec<u64> {
        let n = self.cells.len();
        let placed = col_order.len();
        let allone = |c: usize, rlo: usize, rhi: usize| colzero[c] & range_mask(rlo, rhi) == 0;
        let mut adj = vec![0u64; n];
        for i in 0..n {
            let (_, ci) = self.cells[i];
            for j in (i + 1)..n {
                let (_, cj) = self.cells[j];
                let rlo = row_pos_of_cell[i].min(row_pos_of_cell[j]);
                let rhi = row_pos_of_cell[i].max(row_pos_of_cell[j]);
                let qi = col_pos[ci];
                let qj = col_pos[cj];
                let compatible = match (qi != usize::MAX, qj != usize::MAX) {
                    (true, true) => {
                        (qi.min(qj)..=qi.max(qj)).all(|q| allone(col_order[q], rlo, rhi))
                    }
                    (true, false) | (false, true) => {
                        let (q, uc) = if qi != usize::MAX { (qi, cj) } else { (qj, ci) };
                        (q..placed).all(|qq| allone(col_order[qq], rlo, rhi))
                            && allone(uc, rlo, rhi)
                    }
                    (false, false) => {
                        if ci == cj {
                            allone(ci, rlo, rhi)
                        } else {
                            allone(ci, rlo, rhi) && allone(cj, rlo, rhi)
                        }
                    }
                };
                if compatible {
                    adj[i] |= 1u64 << j;
                    adj[j] |= 1u64 << i;
                }
            }
        }
        adj
    }

    fn dfs_cols(
        &mut self,
        row_order: &[usize],
        row_pos_of_cell: &[usize],
        colzero: &[u64],
        order: &mut Vec<usize>,
        col_pos: &mut Vec<usize>,
    ) -> Result<()> {
        self.tick()?;
        self.col_nodes += 1;
        let adj = self.col_phase_adj(row_pos_of_cell, colzero, order, col_pos);
        if self.prune(&adj) {
            self.mis_prunes += 1;
            return Ok(());
        }
        if self.col_phase_interval_prune(row_pos_of_cell, colzero, order, col_pos)? {
            self.interval_prunes += 1;
            return Ok(());
        }
        if order.len() == self.cols {
            self.leaves += 1;
            let permuted: Vec<u64> = row_order
                .iter()
                .map(|&r| {
                    let mut mask = 0u64;
                    for (q, &c) in order.iter().enumerate() {
                        if self.rowmask[r] >> c & 1 == 1 {
                            mask |= 1u64 << q;
                        }
                    }
                    mask
                })
                .collect();
            let v = cover_of_fixed(&permuted, self.cols, self.best, Some(self.deadline))?;
            if v < self.best {
                self.best = v;
                self.best_orders = (row_order.to_vec(), order.clone());
            }
            return Ok(());
        }
        for c in 0..self.cols {
            if col_pos[c] != usize::MAX {
                continue;
            }
            let k = order.len();
            order.push(c);
            col_pos[c] = k;
            self.dfs_cols(row_order, row_pos_of_cell, colzero, order, col_pos)?;
            order.pop();
            col_pos[c] = usize::MAX;
        }
        Ok(())
    }
}

/// Exact minimum cover over every pair of row and column orders, with one
/// witness ordering. `seeds` are orderings of the original matrix evaluated
/// up front to tighten the initial bound.
pub fn matrix_min_cover_over_orders(
    m: &BoolMatrix,
    seeds: &[(Vec<usize>, Vec<usize>)],
    limits: &OracleLimits,
) -> Result<(usize, (Vec<usize>, Vec<usize>))> {
    let deadline = limits.deadline();
    let red = reduce(m);
    let identity_orders = || {
        (
            (0..m.rows()).collect::<Vec<usize>>(),
            (0..m.cols()).collect::<Vec<usize>>(),
        )
    };
    if red.reduced.rows() == 0 || red.reduced.cols() == 0 {
        return Ok((0, identity_orders()));
    }

    // Orient the search so the outer axis is the larger one: the interval
    // relaxation can never exceed the number of outer lines (one
    // contiguity-free box per line), so a small outer axis starves it.
    let transposed = red.reduced.rows() < red.reduced.cols();
    let work = if transposed {
        red.reduced.transposed()
    } else {
        red.reduced.clone()
    };
    let (rows, cols) = (work.rows(), work.cols());
    if rows > 20 || cols > 20 {
        return Err(Error::LimitExceeded(format!(
            "matrix ordering search supports at most 20 distinct lines per axis, got {rows}x{cols}"
        )));
    }
    let rowmask = rowmasks_of(&work);
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|&(r, c)| rowmask[r] >> c & 1 == 1)
        .collect();
    if cells.len() > 63 {
        return Err(Error::LimitExceeded(format!(
            "matrix ordering search supports at most 63 one-cells, got {}",
            cells.len()
        )));
    }

    // translate an original-axis ordering into reduced work-axis orders
    let to_reduced = |orig_order: &[usize], members: &[Vec<usize>]| -> Vec<usize> {
        let mut rep_of: HashMap<usize, usize> = HashMap::new();
        for (i, g) in members.iter().enumerate() {
            for &o in g {
                rep_of.insert(o, i);
            }
        }
        let mut out = Vec::with_capacity(members.len());
        for &o in orig_order {
            if let Some(&i) = rep_of.get(&o) {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out
    };

    let mut search = OrderSearch {
        rows,
        cols,
        rowmask: rowmask.clone(),
        cells,
        best: usize::MAX,
        best_orders: ((0..rows).collect(), (0..cols).collect()),
        deadline,
        nodes: 0,
        row_nodes: 0,
        col_nodes: 0,
        leaves: 0,
        mis_prunes: 0,
        interval_prunes: 0,
    };

    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> =
        vec![((0..rows).collect(), (0..cols).collect())];
    for (ro, co) in seeds {
        let mut rr = to_reduced(ro, &red.row_members);
        let mut cc = to_reduced(co, &red.col_members);
        if transposed {
            std::mem::swap(&mut rr, &mut cc);
        }
        if rr.len() == rows && cc.len() == cols {
            candidates.push((rr, cc));
        }
    }
    for (ro, co) in &candidates {
        let permuted: Vec<u64> = ro
            .iter()
            .map(|&r| {
                let mut mask = 0u64;
                for (q, &c) in co.iter().enumerate() {
                    if rowmask[r] >> c & 1 == 1 {
                        mask |= 1u64 << q;
                    }
                }
                mask
            })
            .collect();
        let v = cover_of_fixed(&permuted, cols, search.best, Some(deadline))?;
        if v < search.best {
            search.best = v;
            search.best_orders = (ro.clone(), co.clone());
        }
    }

    let mut order = Vec::with_capacity(rows);
    let mut row_pos = vec![usize::MAX; rows];
    let zmask = vec![0u64; cols];
    search.dfs_rows(&mut order, &mut row_pos, &zmask)?;
    if std::env::var_os("BOXKIT_ORDER_SEARCH_STATS").is_some() {
        eprintln!(
            "order-search stats: row_nodes={} col_nodes={} leaves={} mis_prunes={} interval_prunes={}",
            search.row_nodes, search.col_nodes, search.leaves, search.mis_prunes, search.interval_prunes
        );
    }

    let (mut wr, mut wc) = search.best_orders.clone();
    if transposed {
        std::mem::swap(&mut wr, &mut wc);
    }
    let mut orig_rows: Vec<usize> = wr
        .iter()
        .flat_map(|&i| red.row_members[i].iter().copied())
        .collect();
    orig_rows.extend_from_slice(&red.zero_rows);
    let mut orig_cols: Vec<usize> = wc
        .iter()
        .flat_map(|&i| red.col_members[i].iter().copied())
        .collect();
    orig_cols.extend_from_slice(&red.zero_cols);
    Ok((search.best, (orig_rows, orig_cols)))
}
