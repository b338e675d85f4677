use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{DatumError, Root, RootDatum};

/// An element of the Weyl group, carrying its canonical reduced word and
/// its matrices on simple-root coordinates and on characters.
///
/// The canonical word is the lexicographically smallest reduced word in
/// labels, obtained by repeatedly stripping the smallest left descent.
#[derive(Clone)]
pub struct WeylElt(Arc<Inner>);

struct Inner {
    word: Vec<usize>,
    n: usize,
    r: usize,
    /// Column `j` is `w(α_j)` in simple-root coordinates.
    mat: Vec<i64>,
    inv: Vec<i64>,
    /// Action on characters `ℤ^r`.
    xmat: Vec<i64>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && self.0.mat == other.0.mat)
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.word.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.word.len(), &self.0.word).cmp(&(other.0.word.len(), &other.0.word))
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.word.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.0.word.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl WeylElt {
    /// Canonical reduced word, in generator labels.
    pub fn word(&self) -> &[usize] {
        &self.0.word
    }

    pub fn length(&self) -> usize {
        self.0.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.word.is_empty()
    }

    /// Row-major matrix on simple-root coordinates.
    pub fn root_matrix(&self) -> &[i64] {
        &self.0.mat
    }

    /// Row-major matrix on characters.
    pub fn character_matrix(&self) -> &[i64] {
        &self.0.xmat
    }

    /// `w(λ)` for a character (or doubled character) `λ`.
    pub fn act(&self, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.0.xmat, self.0.r, lambda)
    }

    /// `w(β)` for simple-root coordinates `β`.
    pub fn act_coords(&self, beta: &[i64]) -> Vec<i64> {
        mat_vec(&self.0.mat, self.0.n, beta)
    }

    /// `w^{-1}(β)` for simple-root coordinates `β`.
    pub fn act_inverse_coords(&self, beta: &[i64]) -> Vec<i64> {
        mat_vec(&self.0.inv, self.0.n, beta)
    }
}

fn mat_vec(m: &[i64], k: usize, v: &[i64]) -> Vec<i64> {
    (0..k).map(|i| (0..k).map(|j| m[i * k + j] * v[j]).sum()).collect()
}

fn mat_mul(a: &[i64], b: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; k * k];
    for i in 0..k {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += x * b[l * k + j];
            }
        }
    }
    out
}

fn identity(k: usize) -> Vec<i64> {
    let mut m = vec![0; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

impl RootDatum {
    /// `S_i · M`: only row `i` changes.
    fn left_reflect(&self, i: usize, m: &mut [i64]) {
        let n = self.num_nodes();
        let mut row = vec![0i64; n];
        for j in 0..n {
            let a = self.cartan.get(i, j);
            if a == 0 {
                continue;
            }
            for (c, x) in row.iter_mut().enumerate() {
                *x += a * m[j * n + c];
            }
        }
        for c in 0..n {
            m[i * n + c] -= row[c];
        }
    }

    /// `M · S_i`: every column `l` loses `M_{·i} a_{il}`.
    fn right_reflect(&self, i: usize, m: &mut [i64]) {
        let n = self.num_nodes();
        for k in 0..n {
            let mki = m[k * n + i];
            if mki == 0 {
                continue;
            }
            for l in 0..n {
                m[k * n + l] -= mki * self.cartan.get(i, l);
            }
        }
    }

    /// `M · X_i` where `X_i λ = λ − ⟨α_i^∨, λ⟩ α_i`.
    fn right_reflect_x(&self, i: usize, m: &mut [i64]) {
        let r = self.rank_x();
        let root = &self.roots[i];
        let coroot = &self.coroots[i];
        for k in 0..r {
            let mr: i64 = (0..r).map(|j| m[k * r + j] * root[j]).sum();
            if mr == 0 {
                continue;
            }
            for l in 0..r {
                m[k * r + l] -= mr * coroot[l];
            }
        }
    }

    fn canonical_word(&self, mat: &[i64], inv: &[i64]) -> Vec<usize> {
        let n = self.num_nodes();
        let mut m = mat.to_vec();
        let mut v = inv.to_vec();
        let mut word = Vec::new();
        loop {
            let Some(i) = (0..n).find(|&i| (0..n).any(|k| v[k * n + i] < 0)) else {
                break;
            };
            word.push(self.label_of(i));
            self.left_reflect(i, &mut m);
            self.right_reflect(i, &mut v);
        }
        debug_assert_eq!(m, identity(n));
        word
    }

    fn build(&self, mat: Vec<i64>, inv: Vec<i64>, xmat: Option<Vec<i64>>) -> WeylElt {
        let word = self.canonical_word(&mat, &inv);
        let xmat = xmat.unwrap_or_else(|| {
            let r = self.rank_x();
            let mut x = identity(r);
            for &l in &word {
                self.right_reflect_x(l - self.offset(), &mut x);
            }
            x
        });
        WeylElt(Arc::new(Inner {
            word,
            n: self.num_nodes(),
            r: self.rank_x(),
            mat,
            inv,
            xmat,
        }))
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.num_nodes();
        WeylElt(Arc::new(Inner {
            word: Vec::new(),
            n,
            r: self.rank_x(),
            mat: identity(n),
            inv: identity(n),
            xmat: identity(self.rank_x()),
        }))
    }

    /// The simple reflection with the given label.
    pub fn generator(&self, label: usize) -> Result<WeylElt, DatumError> {
        self.from_word(&[label])
    }

    /// The element represented by a word of labels, in canonical form.
    pub fn from_word(&self, labels: &[usize]) -> Result<WeylElt, DatumError> {
        let n = self.num_nodes();
        let mut mat = identity(n);
        let mut inv = identity(n);
        for &l in labels {
            let i = self.index_of(l)?;
            self.right_reflect(i, &mut mat);
            self.left_reflect(i, &mut inv);
        }
        Ok(self.build(mat, inv, None))
    }

    pub fn mul(&self, w: &WeylElt, y: &WeylElt) -> WeylElt {
        if w.is_identity() {
            return y.clone();
        }
        if y.is_identity() {
            return w.clone();
        }
        let n = self.num_nodes();
        let mat = mat_mul(&w.0.mat, &y.0.mat, n);
        let inv = mat_mul(&y.0.inv, &w.0.inv, n);
        let xmat = mat_mul(&w.0.xmat, &y.0.xmat, self.rank_x());
        self.build(mat, inv, Some(xmat))
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        self.build(w.0.inv.clone(), w.0.mat.clone(), None)
    }

    /// `w^{-1}(α_i) < 0` for the generator with internal index `i`.
    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        let n = self.num_nodes();
        (0..n).any(|k| w.0.inv[k * n + i] < 0)
    }

    /// `w(α_i) < 0`.
    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        let n = self.num_nodes();
        (0..n).any(|k| w.0.mat[k * n + i] < 0)
    }

    /// Apply `w` to a character; the W-action on `X` along the word.
    pub fn act_on_character(&self, w: &WeylElt, lambda: &[i64]) -> Vec<i64> {
        w.act(lambda)
    }

    pub fn act_on_root(&self, w: &WeylElt, root: &Root) -> Root {
        self.root_from_coords(w.act_coords(&root.coords))
    }

    /// `D(w) = {s_{i_1}⋯s_{i_{j-1}}(α_{i_j})}` along the canonical word, in
    /// that order.
    pub fn inversion_set(&self, w: &WeylElt) -> Vec<Root> {
        let n = self.num_nodes();
        let mut prefix = identity(n);
        let mut out = Vec::with_capacity(w.length());
        for &l in w.word() {
            let i = l - self.offset();
            let coords: Vec<i64> = (0..n).map(|k| prefix[k * n + i]).collect();
            out.push(self.root_from_coords(coords));
            self.right_reflect(i, &mut prefix);
        }
        out
    }

    /// Bruhat order `y ≤ w`, by descent recursion with memoization.
    pub fn bruhat_leq(&self, y: &WeylElt, w: &WeylElt) -> bool {
        if y.length() > w.length() {
            return false;
        }
        if y.is_identity() {
            return true;
        }
        if y.length() == w.length() {
            return y == w;
        }
        let key = (y.clone(), w.clone());
        if let Some(&v) = self.bruhat_memo.lock().expect("memo lock").get(&key) {
            return v;
        }
        let s = w.word()[0];
        let gen = self.generator(s).expect("label from a canonical word");
        let sw = self.mul(&gen, w);
        let result = if self.is_left_descent(y, s - self.offset()) {
            self.bruhat_leq(&self.mul(&gen, y), &sw)
        } else {
            self.bruhat_leq(y, &sw)
        };
        self.bruhat_memo.lock().expect("memo lock").insert(key, result);
        result
    }

    /// All elements of length at most `max_len`, sorted by length and then
    /// canonical word.
    pub fn elements_up_to_length(&self, max_len: usize) -> Vec<WeylElt> {
        let mut all = vec![self.identity()];
        let mut layer = vec![self.identity()];
        for _ in 0..max_len {
            let mut next = BTreeSet::new();
            for w in &layer {
                for i in 0..self.num_nodes() {
                    if !self.is_left_descent(w, i) {
                        let g = self.generator(self.label_of(i)).expect("valid label");
                        next.insert(self.mul(&g, w));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            all.extend(layer.iter().cloned());
        }
        all
    }

    /// Every reduced word of `w`, sorted lexicographically.
    pub fn reduced_words(&self, w: &WeylElt) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        let mut out = self.reduced_words_rec(w, &mut memo);
        out.sort();
        out
    }

    fn reduced_words_rec(
        &self,
        w: &WeylElt,
        memo: &mut HashMap<WeylElt, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in 0..self.num_nodes() {
            if self.is_left_descent(w, i) {
                let l = self.label_of(i);
                let g = self.generator(l).expect("valid label");
                for mut tail in self.reduced_words_rec(&self.mul(&g, w), memo) {
                    tail.insert(0, l);
                    out.push(tail);
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// The reflection `s_β` of a real root.
    pub fn reflection(&self, root: &Root) -> Result<WeylElt, DatumError> {
        let (_, word, j) = self
            .cartan
            .descend_root(&root.coords)
            .ok_or_else(|| DatumError::NotARealRoot(root.to_string()))?;
        let mut labels: Vec<usize> = word.iter().map(|&i| self.label_of(i)).collect();
        labels.push(self.label_of(j));
        labels.extend(word.iter().rev().map(|&i| self.label_of(i)));
        self.from_word(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_words() {
        let d = RootDatum::preset("A2").unwrap();
        assert!(d.from_word(&[1, 1]).unwrap().is_identity());
        let a = d.from_word(&[1, 2, 1]).unwrap();
        let b = d.from_word(&[2, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.length(), 3);
        assert_eq!(a.word(), &[1, 2, 1]);
        let again = d.from_word(a.word()).unwrap();
        assert_eq!(again.word(), a.word());
        let aff = RootDatum::preset("A1aff").unwrap();
        assert_eq!(aff.from_word(&[0, 1, 0, 1]).unwrap().length(), 4);
        assert!(d.from_word(&[3]).is_err());
        assert!(aff.from_word(&[2]).is_err());
    }

    #[test]
    fn inversion_sets() {
        let d = RootDatum::preset("A2").unwrap();
        let w = d.from_word(&[1, 2]).unwrap();
        let inv: Vec<Vec<i64>> = d.inversion_set(&w).iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(inv, vec![vec![1, 0], vec![1, 1]]);
        let w0 = d.from_word(&[1, 2, 1]).unwrap();
        assert_eq!(d.inversion_set(&w0).len(), 3);
    }

    #[test]
    fn bruhat_examples() {
        let d = RootDatum::preset("A2").unwrap();
        let s1 = d.from_word(&[1]).unwrap();
        let s12 = d.from_word(&[1, 2]).unwrap();
        let s21 = d.from_word(&[2, 1]).unwrap();
        assert!(d.bruhat_leq(&d.identity(), &s12));
        assert!(d.bruhat_leq(&s1, &s12));
        assert!(!d.bruhat_leq(&s12, &s21));
        assert!(!d.bruhat_leq(&s21, &s12));
    }

    #[test]
    fn group_orders() {
        for (name, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12)] {
            let d = RootDatum::preset(name).unwrap();
            assert_eq!(d.elements_up_to_length(20).len(), order, "{name}");
        }
    }

    #[test]
    fn character_action() {
        let d = RootDatum::preset("A2").unwrap();
        let s1 = d.generator(1).unwrap();
        // s_1(ω_1) = ω_1 − α_1
        assert_eq!(s1.act(&[1, 0]), vec![-1, 1]);
        // s_1(α_2) = α_1 + α_2
        assert_eq!(s1.act(&[-1, 2]), vec![1, 1]);
        let aff = RootDatum::preset("A1aff").unwrap();
        let delta = aff.affine().unwrap().delta.clone();
        let s0 = aff.generator(0).unwrap();
        assert_eq!(s0.act(&delta), delta);
    }

    #[test]
    fn reflections_of_real_roots() {
        let d = RootDatum::preset("B2").unwrap();
        for root in d.positive_roots().unwrap() {
            let s = d.reflection(root).unwrap();
            assert_eq!(d.mul(&s, &s), d.identity());
            assert_eq!(d.act_on_root(&s, root), root.neg());
        }
    }
}
