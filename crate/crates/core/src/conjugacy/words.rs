use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use super::ConjugacyGraph;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A word over generators `1..=k`; `-i` is the formal inverse of generator `i`.
pub type Word = Vec<i32>;

/// Longest word accepted by the cancelation dynamic program.
pub const MAX_WORD_LEN: usize = 1_000_000;

/// A word together with the images of its generators in a finite group.
#[derive(Debug, Clone)]
pub struct WordProblemInstance {
    pub group: Arc<FiniteGroup>,
    pub alphabet: Vec<usize>,
    pub word: Word,
}

fn letter(group: &FiniteGroup, alphabet: &[usize], l: i32) -> Result<usize> {
    let i = l.unsigned_abs() as usize;
    if l == 0 || i > alphabet.len() {
        return Err(Error::Domain(format!("letter {l} outside generators 1..={}", alphabet.len())));
    }
    let g = alphabet[i - 1];
    Ok(if l > 0 { g } else { group.inv(g) })
}

pub fn eval_word(group: &FiniteGroup, alphabet: &[usize], word: &[i32]) -> Result<usize> {
    word.iter()
        .try_fold(group.identity(), |acc, &l| Ok(group.mul(acc, letter(group, alphabet, l)?)))
}

/// Free reduction: cancels adjacent `x x^-1` pairs.
pub fn reduce_word(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Least number of letters to delete from the word so the rest evaluates to
/// the identity. Dynamic program over `(prefix, partial product)` states.
pub fn cancelation_norm(inst: &WordProblemInstance) -> Result<usize> {
    let group = &inst.group;
    if inst.word.len() > MAX_WORD_LEN {
        return Err(Error::Domain(format!("word of length {} exceeds {MAX_WORD_LEN}", inst.word.len())));
    }
    let letters = inst
        .word
        .iter()
        .map(|&l| letter(group, &inst.alphabet, l))
        .collect::<Result<Vec<_>>>()?;
    const INF: u32 = u32::MAX;
    let mut cost = vec![INF; group.order()];
    cost[group.identity()] = 0;
    let mut live = vec![group.identity()];
    for &x in &letters {
        let mut next = vec![INF; group.order()];
        let mut next_live = Vec::with_capacity(live.len() * 2);
        for &p in &live {
            let c = cost[p];
            // delete the letter
            if c + 1 < next[p] {
                if next[p] == INF {
                    next_live.push(p);
                }
                next[p] = c + 1;
            }
            // keep it
            let q = group.mul(p, x);
            if c < next[q] {
                if next[q] == INF {
                    next_live.push(q);
                }
                next[q] = c;
            }
        }
        cost = next;
        live = next_live;
    }
    Ok(cost[group.identity()] as usize)
}

/// Minimum cancelation norm over all words representing `target`, with a
/// word attaining it. Shortest-path search over (word value, kept value)
/// pairs where keeping a letter costs 0 and deleting it costs 1.
pub fn min_cancelation(group: &FiniteGroup, alphabet: &[usize], target: usize) -> Result<(usize, Word)> {
    let n = group.order();
    let letters: Vec<(i32, usize)> = (1..=alphabet.len() as i32)
        .flat_map(|i| [i, -i])
        .map(|l| Ok((l, letter(group, alphabet, l)?)))
        .collect::<Result<_>>()?;
    let idx = |full: usize, kept: usize| full * n + kept;
    const INF: u32 = u32::MAX;
    let mut dist = vec![INF; n * n];
    let mut parent: Vec<(u32, i32)> = vec![(u32::MAX, 0); n * n];
    let start = idx(group.identity(), group.identity());
    dist[start] = 0;
    let mut deque = VecDeque::from([start]);
    let goal = idx(target, group.identity());
    while let Some(state) = deque.pop_front() {
        if state == goal {
            break;
        }
        let (full, kept) = (state / n, state % n);
        let d = dist[state];
        for &(l, x) in &letters {
            let f = group.mul(full, x);
            for (next, w) in [(idx(f, group.mul(kept, x)), 0), (idx(f, kept), 1)] {
                if d + w < dist[next] {
                    dist[next] = d + w;
                    parent[next] = (state as u32, l);
                    if w == 0 {
                        deque.push_front(next);
                    } else {
                        deque.push_back(next);
                    }
                }
            }
        }
    }
    if dist[goal] == INF {
        return Err(Error::Hypothesis(format!("{} is not generated by the alphabet", group.format_element(target))));
    }
    let mut word = Vec::new();
    let mut s = goal;
    while s != start {
        let (p, l) = parent[s];
        word.push(l);
        s = p as usize;
    }
    word.reverse();
    Ok((dist[goal] as usize, word))
}

#[derive(Debug, Clone, Serialize)]
pub struct CancelationRow {
    pub element: usize,
    pub literal: String,
    pub delta_length: usize,
    pub reachable: bool,
    pub cancelation: usize,
    pub witness: Word,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleWordRow {
    pub word: Word,
    pub element: String,
    pub cancelation: usize,
    /// Never below the element's minimum over representing words.
    pub above_minimum: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CancelationReport {
    pub rows: Vec<CancelationRow>,
    pub samples: Vec<SampleWordRow>,
    /// Equality on every element.
    pub all_equal: bool,
    /// Equality on the identity's component of the conjugacy graph.
    pub equal_on_component: bool,
}

/// Compares, element by element, the minimum cancelation norm of
/// representing words with `l_Delta`. The alphabet must be closed under
/// inverses, generate the group, and meet every class of `Delta`.
pub fn cancelation_equals_delta(
    group: &Arc<FiniteGroup>,
    delta_elements: &[usize],
    alphabet: &[usize],
    sample_words: &[Word],
) -> Result<CancelationReport> {
    let data = group.classes();
    if let Some(&s) = alphabet.iter().find(|&&s| !alphabet.contains(&group.inv(s))) {
        return Err(Error::Hypothesis(format!("alphabet lacks the inverse of {}", group.format_element(s))));
    }
    if group.closure_mask(alphabet).iter().any(|&m| !m) {
        return Err(Error::Hypothesis("alphabet does not generate the group".into()));
    }
    for &d in delta_elements {
        let c = data.class_of(d);
        if !alphabet.iter().any(|&s| data.class_of(s) == c) {
            return Err(Error::Hypothesis(format!("no letter in the class of {}", group.format_element(d))));
        }
    }
    let graph = ConjugacyGraph::build(group, delta_elements);
    let mut rows = Vec::with_capacity(group.order());
    for g in group.elements() {
        let (c, witness) = min_cancelation(group, alphabet, g)?;
        let dl = graph.length(g);
        rows.push(CancelationRow {
            element: g,
            literal: group.format_element(g),
            delta_length: dl,
            reachable: graph.is_reachable(g),
            cancelation: c,
            witness,
            equal: c == dl,
        });
    }
    let mut samples = Vec::new();
    for w in sample_words {
        let g = eval_word(group, alphabet, w)?;
        let c = cancelation_norm(&WordProblemInstance {
            group: group.clone(),
            alphabet: alphabet.to_vec(),
            word: w.clone(),
        })?;
        samples.push(SampleWordRow {
            word: w.clone(),
            element: group.format_element(g),
            cancelation: c,
            above_minimum: c >= rows[g].cancelation,
        });
    }
    Ok(CancelationReport {
        all_equal: rows.iter().all(|r| r.equal),
        equal_on_component: rows.iter().filter(|r| r.reachable).all(|r| r.equal),
        rows,
        samples,
    })
}
