//! Parallel pair scans over `T~_left T~_right` with deterministic merging.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::coxeter::{Element, Group, Side};
use crate::hecke::{max_degree, Hecke, HeckeVector};
use crate::laurent::{Coefficient, XiPoly};

/// Witness lists are truncated to this many entries; counts are exact.
pub const WITNESS_LIMIT: usize = 20;
const ARGMAX_LIMIT: usize = 5;

/// One product to examine. `x` and `y` are the scanned elements, `left` and
/// `right` the factors actually multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairJob {
    pub x: Element,
    pub y: Element,
    pub left: Element,
    pub right: Element,
}

impl PairJob {
    pub fn plain(x: Element, y: Element) -> PairJob {
        PairJob {
            x,
            y,
            left: x,
            right: y,
        }
    }
}

/// `(left, right, z)` with `deg f_{left,right,z}` over the bound.
pub type Triple = (Element, Element, Element);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeScan {
    pub pairs: u64,
    /// Number of pairs by `max_z deg f_{left,right,z}`.
    pub histogram: BTreeMap<u32, u64>,
    /// Largest degree per `(l(x), l(y))`.
    pub strata: BTreeMap<(usize, usize), u32>,
    pub max_degree: u32,
    pub violation_count: u64,
    pub violations: Vec<Triple>,
    pub argmax: Vec<Triple>,
}

impl DegreeScan {
    fn merge(&mut self, other: DegreeScan) {
        if self.pairs == 0 {
            *self = other;
            return;
        }
        self.pairs += other.pairs;
        for (d, n) in other.histogram {
            *self.histogram.entry(d).or_default() += n;
        }
        for (k, d) in other.strata {
            let slot = self.strata.entry(k).or_insert(d);
            *slot = (*slot).max(d);
        }
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort();
        self.violations.truncate(WITNESS_LIMIT);
        if other.max_degree > self.max_degree {
            self.argmax = other.argmax;
        } else if other.max_degree == self.max_degree {
            self.argmax.extend(other.argmax);
        }
        self.argmax.sort();
        self.argmax.truncate(ARGMAX_LIMIT);
        self.max_degree = self.max_degree.max(other.max_degree);
    }

    fn record(
        &mut self,
        group: &Group,
        job: &PairJob,
        prod: &HeckeVector<XiPoly<impl Coefficient>>,
        bound: Option<u32>,
    ) {
        let deg = max_degree(prod);
        self.pairs += 1;
        *self.histogram.entry(deg).or_default() += 1;
        let key = (group.length(job.x), group.length(job.y));
        let slot = self.strata.entry(key).or_insert(deg);
        *slot = (*slot).max(deg);
        let top: Vec<Element> = prod
            .terms()
            .filter(|(_, c)| c.degree().or_zero() as u32 == deg)
            .map(|(z, _)| z)
            .collect();
        if deg > self.max_degree || self.pairs == 1 {
            self.max_degree = deg;
            self.argmax.clear();
        }
        if deg == self.max_degree && self.argmax.len() < ARGMAX_LIMIT {
            self.argmax.push((job.left, job.right, top[0]));
        }
        if let Some(b) = bound {
            if deg > b {
                self.violation_count += 1;
                for (z, c) in prod.terms() {
                    if c.degree().or_zero() as u32 > b && self.violations.len() < WITNESS_LIMIT {
                        self.violations.push((job.left, job.right, z));
                    }
                }
            }
        }
    }
}

/// Products `T~_left T~_u` for one fixed `left`, optionally reusing the
/// product for the parent prefix of `u`.
pub(crate) struct LeftWalker<'h, 'g, C: Coefficient> {
    hecke: &'h Hecke<'g, C>,
    left: Element,
    cache: Option<HashMap<Element, Arc<HeckeVector<XiPoly<C>>>>>,
}

impl<'h, 'g, C: Coefficient> LeftWalker<'h, 'g, C> {
    pub(crate) fn new(hecke: &'h Hecke<'g, C>, left: Element, memo: bool) -> Self {
        LeftWalker {
            hecke,
            left,
            cache: memo.then(HashMap::new),
        }
    }

    pub(crate) fn product(&mut self, u: Element) -> Arc<HeckeVector<XiPoly<C>>> {
        let group = self.hecke.group();
        let Some(cache) = &mut self.cache else {
            return self.hecke.product(self.left, u);
        };
        let mut chain = Vec::new();
        let mut cur = u;
        while !cache.contains_key(&cur) {
            if cur.is_identity() {
                cache.insert(cur, Arc::new(HeckeVector::basis(self.left)));
                break;
            }
            let g = group.word(cur).last().expect("non-identity");
            chain.push((cur, g));
            cur = group.multiply_gen(cur, g, Side::Right);
        }
        for (elem, g) in chain.into_iter().rev() {
            let parent = group.multiply_gen(elem, g, Side::Right);
            let next = self.hecke.mul_gen_right(&cache[&parent], g);
            cache.insert(elem, Arc::new(next));
        }
        Arc::clone(&cache[&u])
    }
}

/// Degree scan over `jobs`. Jobs are grouped by left factor and the groups
/// run in parallel on the current rayon pool; the table must already cover
/// every product.
pub fn scan_pairs<C: Coefficient>(
    hecke: &Hecke<'_, C>,
    jobs: Vec<PairJob>,
    bound: Option<u32>,
    memo: bool,
) -> DegreeScan {
    let group = hecke.group();
    let mut by_left: BTreeMap<Element, Vec<PairJob>> = BTreeMap::new();
    for job in jobs {
        by_left.entry(job.left).or_default().push(job);
    }
    let groups: Vec<(Element, Vec<PairJob>)> = by_left
        .into_iter()
        .map(|(l, mut js)| {
            js.sort_by_key(|j| (j.right, j.x, j.y));
            (l, js)
        })
        .collect();
    let partial: Vec<DegreeScan> = groups
        .par_iter()
        .map(|(left, js)| {
            let mut walker = LeftWalker::new(hecke, *left, memo);
            let mut acc = DegreeScan::default();
            for job in js {
                let prod = walker.product(job.right);
                acc.record(group, job, &prod, bound);
            }
            acc
        })
        .collect();
    let mut out = DegreeScan::default();
    for part in partial {
        out.merge(part);
    }
    out
}

/// Every pair with `l(x), l(y) <= n`.
pub fn all_pairs(group: &Group, n: usize) -> Vec<PairJob> {
    let elems = group.enumerate_up_to(n).expect("window within the length cap");
    let mut jobs = Vec::with_capacity(elems.len() * elems.len());
    for &x in &elems {
        for &y in &elems {
            jobs.push(PairJob::plain(x, y));
        }
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupParams;

    fn group(a: u32, b: u32) -> Group {
        Group::new(GroupParams::new(a, b).unwrap())
    }

    #[test]
    fn histogram_at_small_windows() {
        let g = group(7, 3);
        g.ensure_length(2).unwrap();
        let h = Hecke::<i64>::new(&g);
        let s0 = scan_pairs(&h, all_pairs(&g, 0), None, false);
        assert_eq!(s0.histogram, BTreeMap::from([(0, 1)]));
        let s1 = scan_pairs(&h, all_pairs(&g, 1), None, true);
        assert_eq!(s1.histogram, BTreeMap::from([(0, 13), (1, 3)]));
        // degree 1 only on (g, g)
        for (l, r, _) in &s1.argmax {
            assert_eq!(l, r);
        }
    }

    #[test]
    fn memo_does_not_change_results() {
        let g = group(5, 4);
        g.ensure_length(8).unwrap();
        let h = Hecke::<i64>::new(&g);
        let a = scan_pairs(&h, all_pairs(&g, 4), Some(1), false);
        let b = scan_pairs(&h, all_pairs(&g, 4), Some(1), true);
        assert_eq!(a, b);
        assert!(a.violation_count > 0);
        assert!(a.violations.len() <= WITNESS_LIMIT);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = group(7, 3);
        g.ensure_length(10).unwrap();
        let h = Hecke::<i64>::new(&g);
        let run = |n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| scan_pairs(&h, all_pairs(&g, 5), Some(2), true))
        };
        assert_eq!(run(1), run(4));
    }
}
