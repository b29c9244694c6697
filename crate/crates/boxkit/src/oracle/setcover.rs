//! Exact minimum set cover by branch and bound: candidates sorted by
//! descending coverage, branching on the least-covered point, forced
//! selections taken without branching, and a scattering lower bound.

use super::bits::Bits;
use crate::error::{Error, Result};
use std::time::Instant;

pub struct SetCoverInstance {
    n_points: usize,
    candidates: Vec<Bits>,
    /// Per point, the union of every candidate containing it.
    blankets: Vec<Bits>,
    /// Per point, the candidates containing it.
    covering: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(n_points: usize, candidates: Vec<Bits>) -> SetCoverInstance {
        let mut blankets = vec![Bits::zeros(n_points); n_points];
        let mut covering = vec![Vec::new(); n_points];
        for (ci, c) in candidates.iter().enumerate() {
            for p in c.iter_set() {
                blankets[p].or_assign(c);
                covering[p].push(ci);
            }
        }
        SetCoverInstance {
            n_points,
            candidates,
            blankets,
            covering,
        }
    }

    fn greedy(&self) -> Option<Vec<usize>> {
        let mut uncovered = Bits::ones(self.n_points);
        let mut chosen = Vec::new();
        while !uncovered.is_zero() {
            let best = (0..self.candidates.len())
                .max_by_key(|&ci| self.candidates[ci].intersection_count(&uncovered))?;
            if self.candidates[best].intersection_count(&uncovered) == 0 {
                return None;
            }
            uncovered.and_not_assign(&self.candidates[best]);
            chosen.push(best);
        }
        Some(chosen)
    }

    /// Scattering bound: repeatedly pick an uncovered point and discard
    /// everything any candidate could co-cover with it. Each pick needs a
    /// distinct candidate in any cover.
    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut u = uncovered.clone();
        let mut count = 0;
        while let Some(p) = u.first_set() {
            count += 1;
            u.and_not_assign(&self.blankets[p]);
        }
        count
    }

    fn dfs(
        &self,
        uncovered: &Bits,
        depth: usize,
        best: &mut usize,
        chosen: &mut Vec<usize>,
        best_set: &mut Vec<usize>,
        deadline: Option<Instant>,
        nodes: &mut u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes % 4096 == 0 {
            if let Some(dl) = deadline {
                if Instant::now() > dl {
                    return Err(Error::LimitExceeded(
                        "time budget exhausted in exact set cover".into(),
                    ));
                }
            }
        }
        if uncovered.is_zero() {
            if depth < *best {
                *best = depth;
                *best_set = chosen.clone();
            }
            return Ok(());
        }
        if depth + self.lower_bound(uncovered) >= *best {
            return Ok(());
        }

        // take forced points (a single covering candidate) without branching
        let mut u = uncovered.clone();
        let mut forced: Vec<usize> = Vec::new();
        loop {
            let mut pick = None;
            for p in u.iter_set() {
                let alive = self.covering[p]
                    .iter()
                    .filter(|&&ci| self.candidates[ci].intersects(&u))
                    .take(2)
                    .count();
                if alive == 1 {
                    let ci = *self.covering[p]
                        .iter()
                        .find(|&&ci| self.candidates[ci].intersects(&u))
                        .expect("counted one");
                    pick = Some(ci);
                    break;
                }
            }
            match pick {
                Some(ci) => {
                    forced.push(ci);
                    u.and_not_assign(&self.candidates[ci]);
                    if u.is_zero() {
                        break;
                    }
                }
                None => break,
            }
        }
        if !forced.is_empty() {
            let new_depth = depth + forced.len();
            if new_depth >= *best {
                return Ok(());
            }
            chosen.extend_from_slice(&forced);
            self.dfs(&u, new_depth, best, chosen, best_set, deadline, nodes)?;
            chosen.truncate(chosen.len() - forced.len());
            return Ok(());
        }

        // branch on the point with the fewest live candidates
        let mut branch_point = None;
        let mut branch_count = usize::MAX;
        for p in uncovered.iter_set() {
            let n = self.covering[p]
                .iter()
                .filter(|&&ci| self.candidates[ci].intersects(uncovered))
                .count();
            if n < branch_count {
                branch_count = n;
                branch_point = Some(p);
                if n <= 2 {
                    break;
                }
            }
        }
        let Some(p) = branch_point else {
            return Ok(());
        };
        if branch_count == 0 {
            return Ok(()); // uncoverable point
        }
        let mut options: Vec<usize> = self.covering[p]
            .iter()
            .copied()
            .filter(|&ci| self.candidates[ci].intersects(uncovered))
            .collect();
        options.sort_by_key(|&ci| usize::MAX - self.candidates[ci].intersection_count(uncovered));
        for ci in options {
            let mut next = uncovered.clone();
            next.and_not_assign(&self.candidates[ci]);
            chosen.push(ci);
            self.dfs(&next, depth + 1, best, chosen, best_set, deadline, nodes)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Exact minimum cover of all points; errors if some point is uncoverable
    /// or the deadline passes.
    pub fn solve(&self, deadline: Option<Instant>) -> Result<(usize, Vec<usize>)> {
        if self.n_points == 0 {
            return Ok((0, Vec::new()));
        }
        let Some(greedy) = self.greedy() else {
            return Err(Error::Invalid(
                "set cover instance has an uncoverable point".into(),
            ));
        };
        let mut best = greedy.len();
        let mut best_set = greedy;
        let mut chosen = Vec::new();
        let mut nodes = 0u64;
        let uncovered = Bits::ones(self.n_points);
        self.dfs(
            &uncovered,
            0,
            &mut best,
            &mut chosen,
            &mut best_set,
            deadline,
            &mut nodes,
        )?;
        best_set.sort_unstable();
        Ok((best, best_set))
    }
}

/// Exact minimum cover where points and candidates fit in a single word.
pub fn exact_min_cover_u64(
    candidates: &[u64],
    full: u64,
    initial_best: usize,
    deadline: Option<Instant>,
) -> Result<usize> {
    if full == 0 {
        return Ok(0);
    }
    let mut blanket = [0u64; 64];
    for &c in candidates {
        let mut m = c & full;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            blanket[p] |= c;
            m &= m - 1;
        }
    }
    fn lb(mut u: u64, blanket: &[u64; 64]) -> usize {
        let mut count = 0;
        while u != 0 {
            let p = u.trailing_zeros() as usize;
            count += 1;
            u &= !blanket[p];
        }
        count
    }
    struct Ctx<'a> {
        cands: &'a [u64],
        blanket: [u64; 64],
        best: usize,
        deadline: Option<Instant>,
        nodes: u64,
    }
    fn dfs(ctx: &mut Ctx, uncovered: u64, depth: usize) -> Result<()> {
        ctx.nodes += 1;
        if ctx.nodes % 8192 == 0 {
            if let Some(dl) = ctx.deadline {
                if Instant::now() > dl {
                    return Err(Error::LimitExceeded(
                        "time budget exhausted in exact set cover".into(),
                    ));
                }
            }
        }
        if uncovered == 0 {
            ctx.best = ctx.best.min(depth);
            return Ok(());
        }
        if depth + lb(uncovered, &ctx.blanket) >= ctx.best {
            return Ok(());
        }
        // least-covered point
        let mut p_best = usize::MAX;
        let mut n_best = usize::MAX;
        let mut m = uncovered;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            let n = ctx.cands.iter().filter(|&&c| c >> p & 1 == 1).count();
            if n < n_best {
                n_best = n;
                p_best = p;
                if n <= 1 {
                    break;
                }
            }
        }
        if n_best == 0 {
            return Ok(());
        }
        let mut options: Vec<u64> = ctx
            .cands
            .iter()
            .copied()
            .filter(|c| c >> p_best & 1 == 1)
            .collect();
        options.sort_by_key(|c| 64 - (c & uncovered).count_ones());
        for c in options {
            dfs(ctx, uncovered & !c, depth + 1)?;
        }
        Ok(())
    }
    let mut ctx = Ctx {
        cands: candidates,
        blanket,
        best: initial_best,
        deadline,
        nodes: 0,
    };
    dfs(&mut ctx, full, 0)?;
    Ok(ctx.best)
}
