//! MALL formulas.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    /// `~X`, the dual of an atom.
    Dual(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Top,
    Zero,
    One,
    Bot,
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Self {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Self {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    /// Linear negation, pushed to the atoms.
    pub fn dual(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(x) => Dual(x.clone()),
            Dual(x) => Atom(x.clone()),
            Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            With(a, b) => Formula::plus(a.dual(), b.dual()),
            Plus(a, b) => Formula::with(a.dual(), b.dual()),
            Top => Zero,
            Zero => Top,
            One => Bot,
            Bot => One,
        }
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::With(a, b) | Formula::Plus(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Heap positions (root 1, children `2h` and `2h+1`) of atom occurrences.
    pub fn atom_positions(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.collect_atoms(1, &mut out);
        out
    }

    fn collect_atoms(&self, h: u64, out: &mut Vec<u64>) {
        match self {
            Formula::Atom(_) | Formula::Dual(_) => out.push(h),
            _ => {
                if let Some((a, b)) = self.children() {
                    a.collect_atoms(2 * h, out);
                    b.collect_atoms(2 * h + 1, out);
                }
            }
        }
    }

    pub fn atom_names(&self) -> Vec<String> {
        match self {
            Formula::Atom(x) | Formula::Dual(x) => vec![x.clone()],
            _ => match self.children() {
                Some((a, b)) => {
                    let mut v = a.atom_names();
                    v.extend(b.atom_names());
                    v
                }
                None => Vec::new(),
            },
        }
    }

    pub fn has_multiplicative_unit(&self) -> bool {
        match self {
            Formula::One | Formula::Bot => true,
            _ => self
                .children()
                .is_some_and(|(a, b)| a.has_multiplicative_unit() || b.has_multiplicative_unit()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Atom(x) => write!(f, "{x}"),
            Dual(x) => write!(f, "~{x}"),
            Tensor(a, b) => write!(f, "(tens {a} {b})"),
            Par(a, b) => write!(f, "(par {a} {b})"),
            With(a, b) => write!(f, "(with {a} {b})"),
            Plus(a, b) => write!(f, "(plus {a} {b})"),
            Top => write!(f, "(top)"),
            Zero => write!(f, "(zero)"),
            One => write!(f, "(one)"),
            Bot => write!(f, "(bot)"),
        }
    }
}
