//! Incremental palindromic tree (eertree) over a growing buffer, with an
//! undo journal so depth-first enumeration can append and roll back in O(1)
//! amortized per step.
//!
//! One node per distinct non-empty palindromic factor, plus two sentinel
//! roots of length 0 and -1. `last` always points at the node of the
//! longest palindromic suffix of the buffer.

use crate::words::{Alphabet, Letter};

type NodeRef = u32;

const NO_NODE: NodeRef = u32::MAX;
/// Sentinel root of length -1 (every single letter x extends it to x).
const ODD_ROOT: NodeRef = 0;
/// Sentinel root of length 0 (the empty palindrome).
const EVEN_ROOT: NodeRef = 1;

/// Letter count at or below which transitions use a fixed dense array.
/// Enumeration spends nearly all its time in transition lookups and q is
/// small in practice.
const DENSE_LIMIT: u8 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EertreeError {
    #[error("letter index {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: u8 },
    #[error("undo on an empty journal")]
    UndoUnderflow,
    #[error("operation requires a non-empty buffer")]
    EmptyBuffer,
}

#[derive(Debug, Clone)]
enum TransitionMap {
    Dense([NodeRef; DENSE_LIMIT as usize]),
    Sparse(Vec<(Letter, NodeRef)>),
}

impl TransitionMap {
    fn new(q: u8) -> Self {
        if q <= DENSE_LIMIT {
            TransitionMap::Dense([NO_NODE; DENSE_LIMIT as usize])
        } else {
            TransitionMap::Sparse(Vec::new())
        }
    }

    #[inline]
    fn get(&self, x: Letter) -> Option<NodeRef> {
        match self {
            TransitionMap::Dense(slots) => {
                let v = slots[x as usize];
                (v != NO_NODE).then_some(v)
            }
            TransitionMap::Sparse(pairs) => {
                pairs.iter().find(|&&(l, _)| l == x).map(|&(_, v)| v)
            }
        }
    }

    #[inline]
    fn insert(&mut self, x: Letter, node: NodeRef) {
        match self {
            TransitionMap::Dense(slots) => {
                debug_assert_eq!(slots[x as usize], NO_NODE);
                slots[x as usize] = node;
            }
            TransitionMap::Sparse(pairs) => {
                debug_assert!(pairs.iter().all(|&(l, _)| l != x));
                pairs.push((x, node));
            }
        }
    }

    /// Removes the transition on `x`. Undo is globally LIFO, so in the
    /// sparse case the pair to drop is always the most recently pushed.
    #[inline]
    fn remove(&mut self, x: Letter) {
        match self {
            TransitionMap::Dense(slots) => {
                debug_assert_ne!(slots[x as usize], NO_NODE);
                slots[x as usize] = NO_NODE;
            }
            TransitionMap::Sparse(pairs) => {
                let popped = pairs.pop();
                debug_assert_eq!(popped.map(|(l, _)| l), Some(x));
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            TransitionMap::Dense(slots) => slots.iter().filter(|&&v| v != NO_NODE).count(),
            TransitionMap::Sparse(pairs) => pairs.len(),
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// Palindrome length; -1 and 0 for the two roots.
    len: i32,
    /// Longest proper palindromic suffix of this node's palindrome.
    suffix_link: NodeRef,
    /// Transition on x from palindrome P leads to xPx.
    transitions: TransitionMap,
}

/// Journal entry for one `append`; enough to restore the previous state.
#[derive(Debug, Clone, Copy)]
struct UndoRecord {
    prev_last: NodeRef,
    /// When the append created a node: the node it was linked from and the
    /// letter of that transition. The created node is always the newest in
    /// the arena, so rollback is a pop.
    created_from: Option<(NodeRef, Letter)>,
}

/// Outcome of a single append.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AppendOutcome {
    /// True iff the append introduced a palindromic factor not seen before.
    /// An append adds at most one: the new longest palindromic suffix.
    pub created_new: bool,
    /// Length of the longest palindromic suffix of the extended buffer.
    pub lps_length: usize,
}

/// Palindromic tree with rollback. Exclusively owned by one worker at a
/// time; never shared for simultaneous mutation.
#[derive(Debug, Clone)]
pub struct Eertree {
    q: u8,
    nodes: Vec<Node>,
    buffer: Vec<Letter>,
    last: NodeRef,
    journal: Vec<UndoRecord>,
}

impl Eertree {
    pub fn new(alphabet: &Alphabet) -> Self {
        let q = alphabet.size();
        let nodes = vec![
            Node { len: -1, suffix_link: ODD_ROOT, transitions: TransitionMap::new(q) },
            Node { len: 0, suffix_link: ODD_ROOT, transitions: TransitionMap::new(q) },
        ];
        Eertree { q, nodes, buffer: Vec::new(), last: EVEN_ROOT, journal: Vec::new() }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.q
    }

    /// Current word.
    pub fn buffer(&self) -> &[Letter] {
        &self.buffer
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    /// Number of distinct non-empty palindromic factors of the buffer.
    pub fn distinct_palindromes(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Total nodes including the two sentinel roots.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn longest_palindromic_suffix_length(&self) -> Result<usize, EertreeError> {
        if self.buffer.is_empty() {
            return Err(EertreeError::EmptyBuffer);
        }
        Ok(self.nodes[self.last as usize].len as usize)
    }

    /// Starting from `from`, follows suffix links until reaching the node
    /// whose palindrome P can be extended to xPx at the end of the buffer.
    /// Terminates at the length -1 root in the worst case.
    #[inline]
    fn extension_candidate(&self, from: NodeRef, x: Letter) -> NodeRef {
        let pos = self.buffer.len() as i32 - 1;
        let mut cur = from;
        loop {
            let mirror = pos - self.nodes[cur as usize].len - 1;
            if mirror >= 0 && self.buffer[mirror as usize] == x {
                return cur;
            }
            cur = self.nodes[cur as usize].suffix_link;
        }
    }

    /// Extends the buffer by one letter. Pushes exactly one journal record.
    pub fn append(&mut self, x: Letter) -> Result<AppendOutcome, EertreeError> {
        if x >= self.q {
            return Err(EertreeError::LetterOutOfRange { letter: x, size: self.q });
        }
        self.buffer.push(x);
        let prev_last = self.last;
        let attach = self.extension_candidate(prev_last, x);

        if let Some(existing) = self.nodes[attach as usize].transitions.get(x) {
            self.journal.push(UndoRecord { prev_last, created_from: None });
            self.last = existing;
            return Ok(AppendOutcome {
                created_new: false,
                lps_length: self.nodes[existing as usize].len as usize,
            });
        }

        let new_len = self.nodes[attach as usize].len + 2;
        let suffix_link = if new_len == 1 {
            EVEN_ROOT
        } else {
            // The next-shorter palindromic suffix xP'x already has a node,
            // so this lookup cannot miss.
            let shorter = self.extension_candidate(self.nodes[attach as usize].suffix_link, x);
            self.nodes[shorter as usize]
                .transitions
                .get(x)
                .expect("proper palindromic suffix must already exist")
        };

        let new_node = self.nodes.len() as NodeRef;
        self.nodes.push(Node { len: new_len, suffix_link, transitions: TransitionMap::new(self.q) });
        self.nodes[attach as usize].transitions.insert(x, new_node);
        self.journal.push(UndoRecord { prev_last, created_from: Some((attach, x)) });
        self.last = new_node;
        Ok(AppendOutcome { created_new: true, lps_length: new_len as usize })
    }

    /// Rolls back the most recent append exactly.
    pub fn undo(&mut self) -> Result<(), EertreeError> {
        let record = self.journal.pop().ok_or(EertreeError::UndoUnderflow)?;
        self.buffer.pop();
        if let Some((from, letter)) = record.created_from {
            self.nodes.pop();
            self.nodes[from as usize].transitions.remove(letter);
        }
        self.last = record.prev_last;
        Ok(())
    }

    /// Sum of transition-map entries across all nodes; exposed for the
    /// rollback-soundness tests.
    pub fn transition_count(&self) -> usize {
        self.nodes.iter().map(|n| n.transitions.len()).sum()
    }
}
