//! Breadth-first exploration of reduction moves with canonical-form
//! memoization.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::plane_map::CanonicalCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub op: String,
    pub target: usize,
    pub canon: String,
}

/// Moves that turn the larger object into the smaller one, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReductionSequence {
    pub steps: Vec<ReductionStep>,
}

impl ReductionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub(crate) struct Move<T> {
    pub op: &'static str,
    pub target: usize,
    pub result: T,
}

struct Visit<T> {
    parent: Option<(CanonicalCode, &'static str, usize)>,
    item: T,
}

/// Everything reachable from `start`, keyed by canonical form.
pub(crate) struct Downset<T> {
    visits: HashMap<CanonicalCode, Visit<T>>,
    root: CanonicalCode,
}

impl<T> Downset<T> {
    /// Explores from `start`. States for which `expand` is false are kept but
    /// not expanded; exploration stops early once `goal` is reached.
    pub fn explore(
        start: T,
        canon: impl Fn(&T) -> Result<CanonicalCode>,
        moves: impl Fn(&T) -> Vec<Move<T>>,
        expand: impl Fn(&T) -> bool,
        goal: Option<&CanonicalCode>,
    ) -> Result<Downset<T>> {
        let root = canon(&start)?;
        let mut visits = HashMap::new();
        visits.insert(
            root.clone(),
            Visit {
                parent: None,
                item: start,
            },
        );
        let mut queue = VecDeque::from([root.clone()]);
        if goal == Some(&root) {
            return Ok(Downset { visits, root });
        }
        while let Some(key) = queue.pop_front() {
            let item = &visits[&key].item;
            if !expand(item) {
                continue;
            }
            let next = moves(item);
            for mv in next {
                let c = canon(&mv.result)?;
                if visits.contains_key(&c) {
                    continue;
                }
                let done = goal == Some(&c);
                visits.insert(
                    c.clone(),
                    Visit {
                        parent: Some((key.clone(), mv.op, mv.target)),
                        item: mv.result,
                    },
                );
                if done {
                    return Ok(Downset { visits, root });
                }
                queue.push_back(c);
            }
        }
        Ok(Downset { visits, root })
    }

    pub fn items(&self) -> impl Iterator<Item = (&CanonicalCode, &T)> {
        self.visits.iter().map(|(k, v)| (k, &v.item))
    }

    /// Moves from the start to `c`.
    pub fn path_to(&self, c: &CanonicalCode) -> Option<ReductionSequence> {
        let mut steps = vec![];
        let mut cur = c.clone();
        while cur != self.root {
            let v = self.visits.get(&cur)?;
            let (parent, op, target) = v.parent.clone()?;
            steps.push(ReductionStep {
                op: op.to_string(),
                target,
                canon: cur.to_string(),
            });
            cur = parent;
        }
        if !self.visits.contains_key(c) {
            return None;
        }
        steps.reverse();
        Some(ReductionSequence { steps })
    }
}
