use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::cartan::{integer_rank, CartanMatrix, Kind};
use super::{DatumError, Root, WeylElt};
use crate::laurent::RatFunc;

/// Choice of character lattice for [`RootDatum::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// Finite: the weight lattice (coordinates are pairings with the simple
    /// coroots). Affine: the full realization, coordinates are pairings with
    /// `α_0^∨, …, α_n^∨, d`.
    Default,
    /// Affine only: the lattice dual to the span of the simple coroots. Here
    /// the simple roots are linearly dependent and `δ` is the zero character,
    /// so the realization axioms on rank are not satisfied.
    Derived,
    /// Explicit simple roots and coroots in `ℤ^r`.
    Custom {
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
    },
}

/// Decorations of an untwisted affine datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineData {
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    /// Highest root of the finite subsystem on nodes `1..=n`.
    pub theta: Root,
    /// Coroot of `θ`, in simple-coroot coordinates over all nodes.
    pub theta_coroot: Vec<i64>,
    /// `δ = Σ a_i α_i` as a character.
    pub delta: Vec<i64>,
    /// `c = Σ a_i^∨ α_i^∨` as a cocharacter.
    pub central: Vec<i64>,
}

pub struct RootDatum {
    pub(crate) name: Option<String>,
    pub(crate) cartan: CartanMatrix,
    pub(crate) kind: Kind,
    pub(crate) lattice: Lattice,
    pub(crate) roots: Vec<Vec<i64>>,
    pub(crate) coroots: Vec<Vec<i64>>,
    pub(crate) affine: Option<AffineData>,
    pub(crate) positive_roots: Option<Vec<Root>>,
    pub(crate) bruhat_memo: Mutex<HashMap<(WeylElt, WeylElt), bool>>,
    pub(crate) sigma_memo: Mutex<HashMap<WeylElt, Arc<BTreeMap<WeylElt, RatFunc>>>>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("name", &self.name)
            .field("cartan", &self.cartan)
            .field("kind", &self.kind)
            .field("roots", &self.roots)
            .field("coroots", &self.coroots)
            .finish()
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.roots == other.roots && self.coroots == other.coroots
    }
}

impl Eq for RootDatum {}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn new(cartan: CartanMatrix, lattice: Lattice) -> Result<Arc<RootDatum>, DatumError> {
        let kind = cartan.classify()?;
        let n = cartan.size();
        let (roots, coroots) = match (&lattice, kind) {
            (Lattice::Default, Kind::Finite) => {
                let roots = (0..n).map(|j| (0..n).map(|i| cartan.get(i, j)).collect()).collect();
                (roots, unit_vectors(n, n))
            }
            (Lattice::Default, Kind::AffineUntwisted) => {
                let roots = (0..n)
                    .map(|j| {
                        let mut v: Vec<i64> = (0..n).map(|i| cartan.get(i, j)).collect();
                        v.push(i64::from(j == 0));
                        v
                    })
                    .collect();
                (roots, unit_vectors(n, n + 1))
            }
            (Lattice::Derived, Kind::AffineUntwisted) => {
                let roots = (0..n).map(|j| (0..n).map(|i| cartan.get(i, j)).collect()).collect();
                (roots, unit_vectors(n, n))
            }
            (Lattice::Derived, Kind::Finite) => {
                return Err(DatumError::WrongKind {
                    expected: Kind::AffineUntwisted,
                })
            }
            (Lattice::Custom { roots, coroots }, _) => (roots.clone(), coroots.clone()),
        };
        validate_realization(&cartan, &roots, &coroots, lattice != Lattice::Derived)?;

        let affine = if kind == Kind::AffineUntwisted {
            let (theta, theta_co) = cartan.affinization_data()?;
            let mut marks = vec![1];
            marks.extend(&theta);
            let mut comarks = vec![1];
            comarks.extend(&theta_co);
            let r = roots[0].len();
            let delta: Vec<i64> = (0..r).map(|k| (0..n).map(|i| marks[i] * roots[i][k]).sum()).collect();
            let central: Vec<i64> =
                (0..r).map(|k| (0..n).map(|i| comarks[i] * coroots[i][k]).sum()).collect();
            let mut theta_coords = vec![0];
            theta_coords.extend(&theta);
            let mut theta_coroot = vec![0];
            theta_coroot.extend(&theta_co);
            let theta_root = Root {
                character: character_of(&roots, &theta_coords),
                coords: theta_coords,
            };
            Some(AffineData {
                marks,
                comarks,
                theta: theta_root,
                theta_coroot,
                delta,
                central,
            })
        } else {
            None
        };

        let positive_roots = (kind == Kind::Finite).then(|| {
            cartan
                .finite_positive_roots()
                .into_iter()
                .map(|c| Root {
                    character: character_of(&roots, &c),
                    coords: c,
                })
                .collect()
        });

        Ok(Arc::new(RootDatum {
            name: None,
            cartan,
            kind,
            lattice,
            roots,
            coroots,
            affine,
            positive_roots,
            bruhat_memo: Mutex::new(HashMap::new()),
            sigma_memo: Mutex::new(HashMap::new()),
        }))
    }

    /// One of `A1`, `A2`, `B2`, `G2`, `A1aff`, `A2aff` with the default
    /// realization.
    pub fn preset(name: &str) -> Result<Arc<RootDatum>, DatumError> {
        let cartan =
            CartanMatrix::preset(name).ok_or_else(|| DatumError::UnknownPreset(name.to_string()))?;
        let d = RootDatum::new(cartan, Lattice::Default)?;
        let mut d = Arc::try_unwrap(d).expect("fresh Arc");
        d.name = Some(name.to_string());
        Ok(Arc::new(d))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn is_finite(&self) -> bool {
        self.kind == Kind::Finite
    }

    /// Number of simple roots.
    pub fn num_nodes(&self) -> usize {
        self.cartan.size()
    }

    /// Rank `r` of the character lattice `X = ℤ^r`.
    pub fn rank_x(&self) -> usize {
        self.roots[0].len()
    }

    /// Label of the first generator: `1` for finite types, `0` for affine.
    pub fn offset(&self) -> usize {
        match self.kind {
            Kind::Finite => 1,
            Kind::AffineUntwisted => 0,
        }
    }

    pub fn labels(&self) -> std::ops::Range<usize> {
        self.offset()..self.offset() + self.num_nodes()
    }

    pub fn index_of(&self, label: usize) -> Result<usize, DatumError> {
        if self.labels().contains(&label) {
            Ok(label - self.offset())
        } else {
            Err(DatumError::LabelOutOfRange { label })
        }
    }

    pub fn label_of(&self, index: usize) -> usize {
        index + self.offset()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn affine(&self) -> Option<&AffineData> {
        self.affine.as_ref()
    }

    pub fn require_finite(&self) -> Result<(), DatumError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(DatumError::WrongKind {
                expected: Kind::Finite,
            })
        }
    }

    pub fn require_affine(&self) -> Result<&AffineData, DatumError> {
        self.affine.as_ref().ok_or(DatumError::WrongKind {
            expected: Kind::AffineUntwisted,
        })
    }

    /// The standard integer pairing between cocharacters and characters.
    pub fn pairing(cocharacter: &[i64], character: &[i64]) -> i64 {
        dot(cocharacter, character)
    }

    /// `⟨α_i^∨, λ⟩` for the generator with internal index `i`.
    pub fn coroot_pairing(&self, i: usize, lambda: &[i64]) -> i64 {
        dot(&self.coroots[i], lambda)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut coords = vec![0; self.num_nodes()];
        coords[i] = 1;
        self.root_from_coords(coords)
    }

    pub fn root_from_coords(&self, coords: Vec<i64>) -> Root {
        Root {
            character: character_of(&self.roots, &coords),
            coords,
        }
    }

    pub fn is_real_root(&self, coords: &[i64]) -> bool {
        self.cartan.descend_root(coords).is_some()
    }

    /// The coroot `β^∨` of a real root, as a cocharacter.
    pub fn coroot(&self, root: &Root) -> Result<Vec<i64>, DatumError> {
        let h = self
            .cartan
            .coroot_of(&root.coords)
            .ok_or_else(|| DatumError::NotARealRoot(root.to_string()))?;
        Ok(character_of(&self.coroots, &h))
    }

    /// `s_i(λ) = λ − ⟨α_i^∨, λ⟩ α_i` for the generator with internal index `i`.
    pub fn reflect_character(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let p = self.coroot_pairing(i, lambda);
        lambda.iter().zip(&self.roots[i]).map(|(l, a)| l - p * a).collect()
    }

    /// All positive roots (finite types only), ordered by height.
    pub fn positive_roots(&self) -> Result<&[Root], DatumError> {
        self.positive_roots.as_deref().ok_or(DatumError::WrongKind {
            expected: Kind::Finite,
        })
    }

    /// Real roots with `|height| ≤ h`, closing `±α_i` under simple
    /// reflections. Positive roots come first, each half ordered by height.
    pub fn real_roots_up_to_height(&self, h: i64) -> Vec<Root> {
        let n = self.num_nodes();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for j in 0..n {
            for s in [1, -1] {
                let mut e = vec![0; n];
                e[j] = s;
                if seen.insert(e.clone()) {
                    queue.push_back(e);
                }
            }
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let mut c = b.clone();
                self.cartan.reflect_root(i, &mut c);
                if c.iter().sum::<i64>().abs() <= h && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<Root> = seen.into_iter().map(|c| self.root_from_coords(c)).collect();
        out.sort_by_key(|r| (r.is_negative(), r.height().abs(), r.coords.clone()));
        out
    }

    /// The character of a finite weight with the given pairings against
    /// `α_i^∨` for the finite nodes (`1..=n` in both kinds). Affine weights
    /// are placed at level zero.
    pub fn finite_weight(&self, pairings: &[i64]) -> Result<Vec<i64>, DatumError> {
        let nf = match self.kind {
            Kind::Finite => self.num_nodes(),
            Kind::AffineUntwisted => self.num_nodes() - 1,
        };
        if pairings.len() != nf {
            return Err(DatumError::InvalidLattice(format!(
                "expected {nf} pairings, got {}",
                pairings.len()
            )));
        }
        let lambda = match (&self.lattice, self.kind) {
            (Lattice::Default, Kind::Finite) => pairings.to_vec(),
            (Lattice::Default | Lattice::Derived, Kind::AffineUntwisted) => {
                let aff = self.affine.as_ref().expect("affine data");
                let level: i64 = (0..nf).map(|i| aff.comarks[i + 1] * pairings[i]).sum();
                let mut v = vec![-level];
                v.extend(pairings);
                if self.lattice == Lattice::Default {
                    v.push(0);
                }
                v
            }
            _ => {
                return Err(DatumError::InvalidLattice(
                    "fundamental weights are only available for built-in realizations".into(),
                ))
            }
        };
        Ok(lambda)
    }

    /// Fundamental weights `ω_1, …, ω_n` of the finite part.
    pub fn fundamental_weights(&self) -> Result<Vec<Vec<i64>>, DatumError> {
        let nf = match self.kind {
            Kind::Finite => self.num_nodes(),
            Kind::AffineUntwisted => self.num_nodes() - 1,
        };
        (0..nf)
            .map(|i| {
                let mut p = vec![0; nf];
                p[i] = 1;
                self.finite_weight(&p)
            })
            .collect()
    }
}

fn unit_vectors(count: usize, len: usize) -> Vec<Vec<i64>> {
    (0..count)
        .map(|i| {
            let mut v = vec![0; len];
            v[i] = 1;
            v
        })
        .collect()
}

pub(crate) fn character_of(basis: &[Vec<i64>], coords: &[i64]) -> Vec<i64> {
    let r = basis[0].len();
    (0..r).map(|k| coords.iter().zip(basis).map(|(c, b)| c * b[k]).sum()).collect()
}

fn validate_realization(
    cartan: &CartanMatrix,
    roots: &[Vec<i64>],
    coroots: &[Vec<i64>],
    check_rank: bool,
) -> Result<(), DatumError> {
    let n = cartan.size();
    if roots.len() != n || coroots.len() != n {
        return Err(DatumError::InvalidLattice(format!(
            "expected {n} simple roots and coroots"
        )));
    }
    let r = roots[0].len();
    if roots.iter().chain(coroots).any(|v| v.len() != r) {
        return Err(DatumError::InvalidLattice("vectors of unequal length".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if dot(&coroots[i], &roots[j]) != cartan.get(i, j) {
                return Err(DatumError::InvalidLattice(format!(
                    "pairing of coroot {i} with root {j} is not a[{i}][{j}]"
                )));
            }
        }
    }
    if check_rank {
        if integer_rank(roots) != n {
            return Err(DatumError::InvalidLattice("simple roots are dependent".into()));
        }
        if integer_rank(coroots) != n {
            return Err(DatumError::InvalidLattice("simple coroots are dependent".into()));
        }
        if r + cartan.rank() != 2 * n {
            return Err(DatumError::InvalidLattice(format!(
                "lattice rank {r} plus rank(A) {} differs from 2n = {}",
                cartan.rank(),
                2 * n
            )));
        }
    }
    Ok(())
}
