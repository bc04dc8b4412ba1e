//! Forbidden-factor automaton over arrow indices.
//!
//! An Aho-Corasick machine with a dense transition table: every state knows
//! its successor on every symbol, and a state is *dead* once some pattern
//! occurs as a suffix of the word read so far. Reading a word from the root
//! reaches a dead state iff the word has a pattern as a contiguous factor.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct FactorAutomaton {
    alphabet: usize,
    next: Vec<usize>,
    dead: Vec<bool>,
    depth: Vec<usize>,
}

impl FactorAutomaton {
    pub const ROOT: usize = 0;

    pub fn new(alphabet: usize, patterns: &[Vec<usize>]) -> Self {
        const NONE: usize = usize::MAX;
        let mut next = vec![NONE; alphabet];
        let mut dead = vec![false];
        let mut depth = vec![0];

        for pattern in patterns {
            let mut state = Self::ROOT;
            for &sym in pattern {
                assert!(sym < alphabet, "symbol {sym} outside alphabet {alphabet}");
                let slot = state * alphabet + sym;
                if next[slot] == NONE {
                    let fresh = dead.len();
                    dead.push(false);
                    depth.push(depth[state] + 1);
                    next.extend(std::iter::repeat(NONE).take(alphabet));
                    next[slot] = fresh;
                }
                state = next[slot];
            }
            dead[state] = true;
        }

        // BFS over the trie: fill missing transitions through failure links.
        let mut fail = vec![Self::ROOT; dead.len()];
        let mut queue = VecDeque::new();
        for sym in 0..alphabet {
            let child = next[sym];
            if child == NONE {
                next[sym] = Self::ROOT;
            } else {
                fail[child] = Self::ROOT;
                queue.push_back(child);
            }
        }
        while let Some(state) = queue.pop_front() {
            dead[state] = dead[state] || dead[fail[state]];
            for sym in 0..alphabet {
                let slot = state * alphabet + sym;
                let child = next[slot];
                let via_fail = next[fail[state] * alphabet + sym];
                if child == NONE {
                    next[slot] = via_fail;
                } else {
                    fail[child] = via_fail;
                    queue.push_back(child);
                }
            }
        }

        FactorAutomaton {
            alphabet,
            next,
            dead,
            depth,
        }
    }

    pub fn step(&self, state: usize, sym: usize) -> usize {
        self.next[state * self.alphabet + sym]
    }

    pub fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }

    /// Length of the longest pattern prefix recognised in `state`.
    pub fn depth(&self, state: usize) -> usize {
        self.depth[state]
    }

    pub fn num_states(&self) -> usize {
        self.dead.len()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Runs `word` from `state`, stopping early at the first dead state.
    pub fn run(&self, mut state: usize, word: &[usize]) -> usize {
        for &sym in word {
            if self.dead[state] {
                break;
            }
            state = self.step(state, sym);
        }
        state
    }

    pub fn contains_factor(&self, word: &[usize]) -> bool {
        self.is_dead(self.run(Self::ROOT, word))
    }
}
