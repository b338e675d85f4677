use std::fmt;

/// A root, stored both in simple-root coordinates and as a character of the
/// torus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub(crate) coords: Vec<i64>,
    pub(crate) character: Vec<i64>,
}

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn character(&self) -> &[i64] {
        &self.character
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0) && self.coords.iter().any(|&x| x != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|&x| x <= 0) && self.coords.iter().any(|&x| x != 0)
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|x| -x).collect(),
            character: self.character.iter().map(|x| -x).collect(),
        }
    }

    /// The positive root among `±self`.
    pub fn abs(&self) -> Root {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root{:?}", self.coords)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}
