use std::collections::HashMap;

/// All `p`-element subsets of `0..n` in lexicographic order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct Subsets {
    list: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Subsets {
    pub fn new(n: usize, p: usize) -> Self {
        let mut list = Vec::new();
        if p <= n {
            let mut cur: Vec<usize> = (0..p).collect();
            loop {
                list.push(cur.clone());
                // advance to the next combination
                let Some(i) = (0..p).rev().find(|&i| cur[i] != i + n - p) else {
                    break;
                };
                cur[i] += 1;
                for j in i + 1..p {
                    cur[j] = cur[j - 1] + 1;
                }
            }
        }
        let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Subsets { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<usize>> {
        self.list.iter()
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// Sign of the permutation that sorts `v` (entries distinct).
pub fn sort_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `s` with its `t`-th entry removed.
pub fn without(s: &[usize], t: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != t)
        .map(|(_, &x)| x)
        .collect()
}
