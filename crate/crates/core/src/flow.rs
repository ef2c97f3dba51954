//! Min-cost flow on the voter/committee transportation network.
//!
//! Voters are unit supplies, committee members are capacitated sinks. The
//! solver adds voters one at a time (in index order) and routes each along a
//! shortest augmenting path of the residual network, which keeps the flow
//! min-cost after every insertion. Paths are searched on the contracted
//! residual graph whose nodes are the committee columns plus a shared
//! overflow pool and the sink; a column-to-column arc stands for moving the
//! cheapest voter between the two columns.
//!
//! Two optional gadgets extend the plain transportation problem:
//!
//! * an *overflow pool* of `r` extra slots, each column taking at most one.
//!   With base capacity `floor(n/K)` and `r = n mod K` this yields exactly the
//!   `floor/ceil` balance Monroe requires without explicit lower bounds;
//! * an *unassigned* column of unbounded capacity whose cost exceeds every
//!   real column, so voters are left out only when the committee is full.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::model::{PreferenceProfile, ScoringFunction};

/// Capacities of the committee columns.
#[derive(Debug, Clone)]
pub(crate) struct Capacities {
    pub base: Vec<usize>,
    pub overflow_pool: usize,
    pub allow_unassigned: bool,
}

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Copy)]
enum Step {
    None,
    Start,
    // move the voter between columns
    Move { from: usize, voter: usize },
    // column takes one overflow slot
    TakeExtra { from: usize },
    // pool revokes the overflow slot of the column
    Revoke,
    // the pool absorbs
    PoolToSink,
    // column absorbs into its free capacity
    ColumnToSink,
}

/// Solves the transportation problem. Returns, per voter, the index into
/// `committee` (or `None` when left unassigned), or `None` if the capacities
/// cannot hold every voter.
pub(crate) fn solve(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
    caps: &Capacities,
) -> Option<Vec<Option<usize>>> {
    let n = profile.num_voters();
    let s = committee.len();
    let cols = s + usize::from(caps.allow_unassigned);
    let dummy = caps.allow_unassigned.then_some(s);
    let pool_node = cols;
    let sink = cols + 1;
    let nodes = cols + 2;

    let smax = psf.max_score();
    let cost = |v: usize, j: usize| -> i64 {
        if j < s {
            smax - psf.score(profile.pos(v, committee[j]))
        } else {
            smax + 1
        }
    };

    let mut column: Vec<usize> = vec![usize::MAX; n];
    let mut load = vec![0usize; cols];
    let mut has_extra = vec![false; cols];
    let mut pool_used = 0usize;
    let cap_of = |j: usize, has_extra: &[bool]| -> usize {
        if Some(j) == dummy {
            usize::MAX
        } else {
            caps.base[j] + usize::from(has_extra[j])
        }
    };

    // per ordered column pair: (move cost, voter), stale entries dropped lazily
    let mut moves: Vec<BinaryHeap<Reverse<(i64, usize)>>> =
        (0..cols * cols).map(|_| BinaryHeap::new()).collect();
    let place = |v: usize, j: usize, moves: &mut Vec<BinaryHeap<Reverse<(i64, usize)>>>| {
        let here = cost(v, j);
        for jj in (0..cols).filter(|&jj| jj != j) {
            moves[j * cols + jj].push(Reverse((cost(v, jj) - here, v)));
        }
    };
    let mut move_cost = vec![INF; cols * cols];
    let mut move_voter = vec![usize::MAX; cols * cols];
    let mut dist = vec![INF; nodes];
    let mut pred = vec![Step::None; nodes];
    let mut pred_node = vec![usize::MAX; nodes];

    for u in 0..n {
        for j in 0..cols {
            for jj in 0..cols {
                let slot = j * cols + jj;
                move_cost[slot] = INF;
                let heap = &mut moves[slot];
                while let Some(&Reverse((d, v))) = heap.peek() {
                    if column[v] == j {
                        move_cost[slot] = d;
                        move_voter[slot] = v;
                        break;
                    }
                    heap.pop();
                }
            }
        }

        dist.fill(INF);
        pred.fill(Step::None);
        for j in 0..cols {
            dist[j] = cost(u, j);
            pred[j] = Step::Start;
            pred_node[j] = usize::MAX;
        }

        // Bellman-Ford over the contracted residual graph
        for _ in 0..nodes {
            let mut changed = false;
            for j in 0..cols {
                let dj = dist[j];
                if dj >= INF {
                    continue;
                }
                if load[j] < cap_of(j, &has_extra) && dj < dist[sink] {
                    dist[sink] = dj;
                    pred[sink] = Step::ColumnToSink;
                    pred_node[sink] = j;
                    changed = true;
                }
                if caps.overflow_pool > 0
                    && Some(j) != dummy
                    && !has_extra[j]
                    && load[j] == cap_of(j, &has_extra)
                    && dj < dist[pool_node]
                {
                    dist[pool_node] = dj;
                    pred[pool_node] = Step::TakeExtra { from: j };
                    pred_node[pool_node] = j;
                    changed = true;
                }
                for jj in 0..cols {
                    let w = move_cost[j * cols + jj];
                    if w >= INF {
                        continue;
                    }
                    if dj + w < dist[jj] {
                        dist[jj] = dj + w;
                        pred[jj] = Step::Move {
                            from: j,
                            voter: move_voter[j * cols + jj],
                        };
                        pred_node[jj] = j;
                        changed = true;
                    }
                }
            }
            let dp = dist[pool_node];
            if dp < INF {
                if pool_used < caps.overflow_pool && dp < dist[sink] {
                    dist[sink] = dp;
                    pred[sink] = Step::PoolToSink;
                    pred_node[sink] = pool_node;
                    changed = true;
                }
                for j in 0..cols {
                    if has_extra[j] && dp < dist[j] {
                        dist[j] = dp;
                        pred[j] = Step::Revoke;
                        pred_node[j] = pool_node;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        if dist[sink] >= INF {
            return None;
        }

        // apply the path, walking back from the sink
        let mut node = sink;
        loop {
            match pred[node] {
                Step::Start => {
                    column[u] = node;
                    load[node] += 1;
                    place(u, node, &mut moves);
                    break;
                }
                Step::Move { from, voter } => {
                    column[voter] = node;
                    load[from] -= 1;
                    load[node] += 1;
                    place(voter, node, &mut moves);
                }
                Step::TakeExtra { from } => has_extra[from] = true,
                Step::Revoke => has_extra[node] = false,
                Step::PoolToSink => pool_used += 1,
                Step::ColumnToSink => {}
                Step::None => unreachable!("broken predecessor chain"),
            }
            node = pred_node[node];
        }
    }

    Some(
        column
            .into_iter()
            .map(|j| if Some(j) == dummy { None } else { Some(j) })
            .collect(),
    )
}
