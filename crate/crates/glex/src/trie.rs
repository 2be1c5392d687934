//! Path-compressed trie from destressed keys to payload lists.
//!
//! Edge labels hold one or more scalars; single-child chains without
//! payloads are merged into their child's label, so every internal node
//! either carries a payload or branches. Keys are destressed, case-folded
//! strings over [`crate::alphabet::KEY_ALPHABET`]; a key with a tonos, an
//! uppercase letter, or a final sigma is rejected at build time.
//!
//! The serialized form is a preorder node stream with varint-length edge
//! labels and varint payload lists.

use std::io::{self, Read, Write};

use crate::alphabet::{has_tonos, KEY_ALPHABET};
use crate::morph::StressPosition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrieError {
    #[error("invalid key {0:?}: keys must be destressed, folded Greek")]
    InvalidKey(String),
    #[error("corrupt trie stream: {0}")]
    Corrupt(String),
    #[error("structural invariant violated: {0}")]
    Invariant(String),
}

/// What a key maps to: the form id plus the stress information encoded
/// with the entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PayloadRecord {
    pub form_id: u32,
    pub stress: StressPosition,
    pub flags: u8,
}

impl PayloadRecord {
    pub const FLAG_KEEP_STRESS: u8 = 0b0000_0001;

    /// Stress in the low two bits, flags above them.
    fn packed_byte(&self) -> u8 {
        let stress = match self.stress {
            StressPosition::Final => 0,
            StressPosition::Penultimate => 1,
            StressPosition::Antepenultimate => 2,
        };
        stress | (self.flags << 2)
    }

    fn unpack_byte(b: u8) -> Option<(StressPosition, u8)> {
        let stress = match b & 0b11 {
            0 => StressPosition::Final,
            1 => StressPosition::Penultimate,
            2 => StressPosition::Antepenultimate,
            _ => return None,
        };
        Some((stress, b >> 2))
    }
}

#[derive(Debug, Clone, Default)]
struct Node {
    label: Vec<char>,
    /// Child node indices, sorted by the first scalar of their labels.
    children: Vec<u32>,
    payloads: Vec<PayloadRecord>,
}

/// The index structure. Immutable after [`CompressedTrie::build`]; safe
/// to share across threads.
#[derive(Debug, Clone, Default)]
pub struct CompressedTrie {
    nodes: Vec<Node>,
}

fn valid_key(key: &str) -> bool {
    key.chars().all(|c| KEY_ALPHABET.contains(&c))
}

impl CompressedTrie {
    /// Build from (key, payload) pairs. Duplicate keys merge their
    /// payloads; payload lists come out sorted by form id.
    pub fn build<I>(pairs: I) -> Result<CompressedTrie, TrieError>
    where
        I: IntoIterator<Item = (String, PayloadRecord)>,
    {
        let mut trie = CompressedTrie { nodes: vec![Node::default()] };
        for (key, payload) in pairs {
            if !valid_key(&key) {
                return Err(TrieError::InvalidKey(key));
            }
            let chars: Vec<char> = key.chars().collect();
            trie.insert(&chars, payload);
        }
        for node in &mut trie.nodes {
            node.payloads.sort();
        }
        Ok(trie)
    }

    fn insert(&mut self, key: &[char], payload: PayloadRecord) {
        let mut node = 0usize;
        let mut pos = 0usize;
        loop {
            if pos == key.len() {
                self.nodes[node].payloads.push(payload);
                return;
            }
            let first = key[pos];
            let slot = self.nodes[node]
                .children
                .binary_search_by_key(&first, |&c| self.nodes[c as usize].label[0]);
            match slot {
                Err(insert_at) => {
                    let leaf = self.push_node(Node {
                        label: key[pos..].to_vec(),
                        children: Vec::new(),
                        payloads: vec![payload],
                    });
                    self.nodes[node].children.insert(insert_at, leaf);
                    return;
                }
                Ok(child_slot) => {
                    let child = self.nodes[node].children[child_slot] as usize;
                    let common = self.nodes[child]
                        .label
                        .iter()
                        .zip(&key[pos..])
                        .take_while(|(a, b)| a == b)
                        .count();
                    if common == self.nodes[child].label.len() {
                        node = child;
                        pos += common;
                        continue;
                    }
                    // the edge diverges: split it at the common prefix
                    let mut mid = Node {
                        label: self.nodes[child].label[..common].to_vec(),
                        children: Vec::new(),
                        payloads: Vec::new(),
                    };
                    let rest = self.nodes[child].label.split_off(common);
                    self.nodes[child].label = rest;
                    pos += common;
                    if pos == key.len() {
                        mid.payloads.push(payload);
                        mid.children.push(child as u32);
                        let mid = self.push_node(mid);
                        self.nodes[node].children[child_slot] = mid;
                    } else {
                        let leaf = self.push_node(Node {
                            label: key[pos..].to_vec(),
                            children: Vec::new(),
                            payloads: vec![payload],
                        });
                        let mut kids = vec![child as u32, leaf];
                        kids.sort_by_key(|&c| self.nodes[c as usize].label[0]);
                        mid.children = kids;
                        let mid = self.push_node(mid);
                        self.nodes[node].children[child_slot] = mid;
                    }
                    return;
                }
            }
        }
    }

    fn push_node(&mut self, node: Node) -> u32 {
        self.nodes.push(node);
        (self.nodes.len() - 1) as u32
    }

    /// Exact-match payloads; empty slice for absent keys.
    pub fn lookup(&self, key: &str) -> &[PayloadRecord] {
        self.lookup_with_visits(key).0
    }

    /// Exact match plus the number of nodes visited. The count never
    /// exceeds the key's scalar length plus one.
    pub fn lookup_with_visits(&self, key: &str) -> (&[PayloadRecord], usize) {
        let chars: Vec<char> = key.chars().collect();
        let mut node = 0usize;
        let mut pos = 0usize;
        let mut visits = 1usize;
        loop {
            if pos == chars.len() {
                return (&self.nodes[node].payloads, visits);
            }
            let slot = self.nodes[node]
                .children
                .binary_search_by_key(&chars[pos], |&c| self.nodes[c as usize].label[0]);
            let Ok(child_slot) = slot else { return (&[], visits) };
            let child = self.nodes[node].children[child_slot] as usize;
            visits += 1;
            let label = &self.nodes[child].label;
            if chars.len() - pos < label.len() || label[..] != chars[pos..pos + label.len()] {
                return (&[], visits);
            }
            pos += label.len();
            node = child;
        }
    }

    /// All keys with the given prefix, in lexicographic order of the key
    /// alphabet (scalar order), with their payloads.
    pub fn walk_prefix(&self, prefix: &str) -> PrefixWalk<'_> {
        let chars: Vec<char> = prefix.chars().collect();
        let mut node = 0usize;
        let mut pos = 0usize;
        let mut key: Vec<char> = Vec::new();
        loop {
            if pos == chars.len() {
                return PrefixWalk { trie: self, stack: vec![(node as u32, key)] };
            }
            let slot = self.nodes[node]
                .children
                .binary_search_by_key(&chars[pos], |&c| self.nodes[c as usize].label[0]);
            let Ok(child_slot) = slot else {
                return PrefixWalk { trie: self, stack: Vec::new() };
            };
            let child = self.nodes[node].children[child_slot] as usize;
            let label = &self.nodes[child].label;
            let overlap = label.len().min(chars.len() - pos);
            if label[..overlap] != chars[pos..pos + overlap] {
                return PrefixWalk { trie: self, stack: Vec::new() };
            }
            key.extend_from_slice(&chars[pos..pos + overlap]);
            if overlap < label.len() {
                // prefix ends inside this edge; every key below matches
                key.extend_from_slice(&label[overlap..]);
            }
            pos += overlap;
            node = child;
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Verify path compression, child ordering, and key validity over the
    /// whole structure.
    pub fn check_structure(&self) -> Result<(), TrieError> {
        for (i, node) in self.nodes.iter().enumerate() {
            if i != 0 {
                if node.label.is_empty() {
                    return Err(TrieError::Invariant(format!("node {i} has an empty label")));
                }
                if node.payloads.is_empty() && node.children.len() == 1 {
                    return Err(TrieError::Invariant(format!(
                        "node {i} is a payload-less chain node"
                    )));
                }
                for &c in &node.label {
                    if has_tonos(c) || c.is_uppercase() || !KEY_ALPHABET.contains(&c) {
                        return Err(TrieError::Invariant(format!(
                            "node {i} label holds invalid scalar {c:?}"
                        )));
                    }
                }
            }
            let firsts: Vec<char> =
                node.children.iter().map(|&c| self.nodes[c as usize].label[0]).collect();
            if firsts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(TrieError::Invariant(format!("node {i} children out of order")));
            }
            if node.payloads.windows(2).any(|w| w[0] > w[1]) {
                return Err(TrieError::Invariant(format!("node {i} payloads out of order")));
            }
        }
        Ok(())
    }

    /// Write the preorder node stream.
    pub fn serialize(&self, sink: &mut impl Write) -> io::Result<()> {
        let mut stack = vec![0u32];
        while let Some(index) = stack.pop() {
            let node = &self.nodes[index as usize];
            let label: String = node.label.iter().collect();
            write_varint(sink, label.len() as u64)?;
            sink.write_all(label.as_bytes())?;
            write_varint(sink, node.payloads.len() as u64)?;
            for p in &node.payloads {
                write_varint(sink, p.form_id as u64)?;
                sink.write_all(&[p.packed_byte()])?;
            }
            write_varint(sink, node.children.len() as u64)?;
            for &child in node.children.iter().rev() {
                stack.push(child);
            }
        }
        Ok(())
    }

    pub fn serialize_to_vec(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.serialize(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Read a preorder node stream written by [`CompressedTrie::serialize`].
    pub fn deserialize(source: &mut impl Read) -> Result<CompressedTrie, TrieError> {
        let mut nodes = Vec::new();
        // (parent index, children still to read)
        let mut pending: Vec<(usize, u64)> = Vec::new();
        loop {
            let label_len = read_varint(source)?;
            let mut label_bytes = vec![0u8; label_len as usize];
            source
                .read_exact(&mut label_bytes)
                .map_err(|e| TrieError::Corrupt(format!("label bytes: {e}")))?;
            let label: Vec<char> = String::from_utf8(label_bytes)
                .map_err(|_| TrieError::Corrupt("label is not UTF-8".into()))?
                .chars()
                .collect();
            if !nodes.is_empty() && label.is_empty() {
                return Err(TrieError::Corrupt("non-root node with empty label".into()));
            }
            let payload_count = read_varint(source)?;
            let mut payloads = Vec::with_capacity(payload_count.min(1024) as usize);
            for _ in 0..payload_count {
                let form_id = read_varint(source)?;
                let mut rest = [0u8; 1];
                source
                    .read_exact(&mut rest)
                    .map_err(|e| TrieError::Corrupt(format!("payload bytes: {e}")))?;
                let (stress, flags) = PayloadRecord::unpack_byte(rest[0])
                    .ok_or_else(|| TrieError::Corrupt("invalid stress byte".into()))?;
                payloads.push(PayloadRecord {
                    form_id: u32::try_from(form_id)
                        .map_err(|_| TrieError::Corrupt("form id overflow".into()))?,
                    stress,
                    flags,
                });
            }
            let child_count = read_varint(source)?;
            let index = nodes.len();
            nodes.push(Node { label, children: Vec::new(), payloads });
            if let Some(last) = pending.last_mut() {
                nodes[last.0].children.push(index as u32);
                last.1 -= 1;
            }
            if child_count > 0 {
                pending.push((index, child_count));
            }
            while pending.last().is_some_and(|&(_, n)| n == 0) {
                pending.pop();
            }
            if pending.is_empty() {
                break;
            }
        }
        let trie = CompressedTrie { nodes };
        // child ordering is part of the format, not reconstructed
        for (i, node) in trie.nodes.iter().enumerate() {
            let firsts: Vec<char> =
                node.children.iter().map(|&c| trie.nodes[c as usize].label[0]).collect();
            if firsts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(TrieError::Corrupt(format!("node {i} children out of order")));
            }
        }
        Ok(trie)
    }
}

/// Iterator over `(key, payloads)` produced by [`CompressedTrie::walk_prefix`].
pub struct PrefixWalk<'a> {
    trie: &'a CompressedTrie,
    stack: Vec<(u32, Vec<char>)>,
}

impl<'a> Iterator for PrefixWalk<'a> {
    type Item = (String, &'a [PayloadRecord]);

    fn next(&mut self) -> Option<Self::Item> {
        while let Some((index, key)) = self.stack.pop() {
            let node = &self.trie.nodes[index as usize];
            for &child in node.children.iter().rev() {
                let mut child_key = key.clone();
                child_key.extend(&self.trie.nodes[child as usize].label);
                self.stack.push((child, child_key));
            }
            if !node.payloads.is_empty() {
                return Some((key.into_iter().collect(), &node.payloads));
            }
        }
        None
    }
}

fn write_varint(sink: &mut impl Write, value: u64) -> io::Result<()> {
    crate::varint::write(sink, value)
}

fn read_varint(source: &mut impl Read) -> Result<u64, TrieError> {
    crate::varint::read(source).map_err(|e| TrieError::Corrupt(format!("varint: {e}")))
}
