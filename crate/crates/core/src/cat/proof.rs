//! One-sided MALL sequent proofs, their conclusions and principal cut steps.
//!
//! Principal formulas are always last: `(ax A)` proves `~A, A`; `(cut p q)`
//! cuts the last formula of `p` against the last formula of `q`; the
//! connective rules act on the last one or two formulas; `(ex σ p)` reorders
//! so that the `n`-th conclusion formula is the `σ(n)`-th premise formula.

use std::fmt;

use crate::cat::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    Ax(Formula),
    Cut(Box<Proof>, Box<Proof>),
    Tensor(Box<Proof>, Box<Proof>),
    Par(Box<Proof>),
    With(Box<Proof>, Box<Proof>),
    /// From `Γ, A` infer `Γ, A ⊕ B`; carries `B`.
    PlusL(Formula, Box<Proof>),
    /// From `Γ, B` infer `Γ, A ⊕ B`; carries `A`.
    PlusR(Formula, Box<Proof>),
    /// `Γ, ⊤`; carries `Γ`.
    Top(Vec<Formula>),
    One,
    Bot(Box<Proof>),
    Ex(Vec<usize>, Box<Proof>),
}

fn ill(msg: impl Into<String>) -> Error {
    Error::IllFormedProof(msg.into())
}

fn split_last(mut s: Vec<Formula>, rule: &str) -> Result<(Vec<Formula>, Formula)> {
    let last = s.pop().ok_or_else(|| ill(format!("{rule}: empty premise sequent")))?;
    Ok((s, last))
}

impl Proof {
    pub fn conclusion(&self) -> Result<Vec<Formula>> {
        use Proof::*;
        let out = match self {
            Ax(a) => vec![a.dual(), a.clone()],
            Cut(p, q) => {
                let (mut g, a) = split_last(p.conclusion()?, "cut")?;
                let (d, b) = split_last(q.conclusion()?, "cut")?;
                if b != a.dual() {
                    return Err(ill(format!("cut formulas {a} and {b} are not dual")));
                }
                g.extend(d);
                g
            }
            Tensor(p, q) => {
                let (mut g, a) = split_last(p.conclusion()?, "tensor")?;
                let (d, b) = split_last(q.conclusion()?, "tensor")?;
                g.extend(d);
                g.push(Formula::tensor(a, b));
                g
            }
            Par(p) => {
                let (g, b) = split_last(p.conclusion()?, "par")?;
                let (mut g, a) = split_last(g, "par")?;
                g.push(Formula::par(a, b));
                g
            }
            With(p, q) => {
                let (mut g, a) = split_last(p.conclusion()?, "with")?;
                let (d, b) = split_last(q.conclusion()?, "with")?;
                if g != d {
                    return Err(ill("with: premise contexts differ"));
                }
                g.push(Formula::with(a, b));
                g
            }
            PlusL(b, p) => {
                let (mut g, a) = split_last(p.conclusion()?, "plus_l")?;
                g.push(Formula::plus(a, b.clone()));
                g
            }
            PlusR(a, p) => {
                let (mut g, b) = split_last(p.conclusion()?, "plus_r")?;
                g.push(Formula::plus(a.clone(), b));
                g
            }
            Top(g) => {
                let mut g = g.clone();
                g.push(Formula::Top);
                g
            }
            One => vec![Formula::One],
            Bot(p) => {
                let mut g = p.conclusion()?;
                g.push(Formula::Bot);
                g
            }
            Ex(perm, p) => {
                let prem = p.conclusion()?;
                check_permutation(perm, prem.len())?;
                perm.iter().map(|&i| prem[i].clone()).collect()
            }
        };
        if out.len() >= crate::cat::interpret::MAX_FORMULAS {
            return Err(ill("sequent too long"));
        }
        Ok(out)
    }

    pub fn premises(&self) -> Vec<&Proof> {
        use Proof::*;
        match self {
            Ax(_) | Top(_) | One => vec![],
            Cut(p, q) | Tensor(p, q) | With(p, q) => vec![p, q],
            Par(p) | PlusL(_, p) | PlusR(_, p) | Bot(p) | Ex(_, p) => vec![p],
        }
    }

    pub fn rule_name(&self) -> &'static str {
        use Proof::*;
        match self {
            Ax(_) => "ax",
            Cut(..) => "cut",
            Tensor(..) => "tensor",
            Par(_) => "par",
            With(..) => "with",
            PlusL(..) => "plus_l",
            PlusR(..) => "plus_r",
            Top(_) => "top",
            One => "one",
            Bot(_) => "bot",
            Ex(..) => "ex",
        }
    }

    /// Every rule name used in the proof.
    pub fn rules(&self) -> Vec<&'static str> {
        let mut out = vec![self.rule_name()];
        for p in self.premises() {
            out.extend(p.rules());
        }
        out
    }

    pub fn formulas(&self) -> Vec<Formula> {
        use Proof::*;
        let mut out: Vec<Formula> = match self {
            Ax(a) | PlusL(a, _) | PlusR(a, _) => vec![a.clone()],
            Top(g) => g.clone(),
            _ => vec![],
        };
        for p in self.premises() {
            out.extend(p.formulas());
        }
        out
    }

    /// One principal cut-elimination step at the first reducible cut in
    /// pre-order.
    pub fn reduce_step(&self) -> Result<Proof> {
        self.conclusion()?;
        self.try_reduce()
            .unwrap_or_else(|| Err(Error::NotReducible("no principal cut".into())))
    }

    fn try_reduce(&self) -> Option<Result<Proof>> {
        if let Proof::Cut(p, q) = self {
            if let Some(r) = principal_step(p, q) {
                return Some(r);
            }
        }
        use Proof::*;
        let wrap1 = |p: &Proof, f: &dyn Fn(Box<Proof>) -> Proof| p.try_reduce().map(|r| r.map(|x| f(Box::new(x))));
        match self {
            Ax(_) | Top(_) | One => None,
            Cut(p, q) | Tensor(p, q) | With(p, q) => {
                let rebuild = |a: Box<Proof>, b: Box<Proof>| match self {
                    Cut(..) => Cut(a, b),
                    Tensor(..) => Tensor(a, b),
                    _ => With(a, b),
                };
                if let Some(r) = p.try_reduce() {
                    return Some(r.map(|x| rebuild(Box::new(x), q.clone())));
                }
                q.try_reduce().map(|r| r.map(|x| rebuild(p.clone(), Box::new(x))))
            }
            Par(p) => wrap1(p, &Par),
            Bot(p) => wrap1(p, &Bot),
            PlusL(b, p) => wrap1(p, &|x| PlusL(b.clone(), x)),
            PlusR(a, p) => wrap1(p, &|x| PlusR(a.clone(), x)),
            Ex(s, p) => wrap1(p, &|x| Ex(s.clone(), x)),
        }
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(ill(format!("exchange of length {} on a sequent of length {n}", perm.len())));
    }
    for &i in perm {
        if i >= n || seen[i] {
            return Err(ill("exchange is not a permutation"));
        }
        seen[i] = true;
    }
    Ok(())
}

/// `σ` moving the formula at `from` to position `to`, shifting the others.
fn move_perm(n: usize, from: usize, to: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let x = order.remove(from);
    order.insert(to, x);
    order
}

fn ex(perm: Vec<usize>, p: Proof) -> Proof {
    if perm.iter().enumerate().all(|(i, &j)| i == j) {
        p
    } else {
        Proof::Ex(perm, Box::new(p))
    }
}

fn principal_step(p: &Proof, q: &Proof) -> Option<Result<Proof>> {
    let gp = p.conclusion().ok()?;
    let gq = q.conclusion().ok()?;
    let (g, d) = (gp.len() - 1, gq.len() - 1);
    use Proof::*;
    match (p, q) {
        // Γ, A against the axiom ⊢ A, ~A
        (_, Ax(_)) => Some(Ok(p.clone())),
        // ⊢ ~B, B against Δ, ~B
        (Ax(_), _) => Some(Ok(ex(move_perm(d + 1, d, 0), q.clone()))),
        (Tensor(p1, p2), Par(r)) => Some(Ok(tensor_par(p1, p2, r))),
        (Par(_), Tensor(..)) => principal_step(q, p).map(|r| r.map(|x| swapped_cut_result(x, d, g))),
        (With(p1, _), PlusL(_, r)) => Some(Ok(Cut(p1.clone(), r.clone()))),
        (With(_, p2), PlusR(_, r)) => Some(Ok(Cut(p2.clone(), r.clone()))),
        (PlusL(..) | PlusR(..), With(..)) => principal_step(q, p).map(|r| r.map(|x| swapped_cut_result(x, d, g))),
        (One, Bot(r)) => Some(Ok((**r).clone())),
        (Bot(r), One) => Some(Ok((**r).clone())),
        _ => None,
    }
}

/// A reduct of `cut(q, p)` (concluding `Δ, Γ`) reordered to `Γ, Δ`.
fn swapped_cut_result(x: Proof, delta: usize, gamma: usize) -> Proof {
    let perm: Vec<usize> = (delta..delta + gamma).chain(0..delta).collect();
    ex(perm, x)
}

/// `cut(tensor(p1 ⊢ Γ,A; p2 ⊢ Δ,B); par(r ⊢ Σ,~A,~B))` becomes
/// `cut(p2, cut(p1, r'))` reordered to `Γ, Δ, Σ`.
fn tensor_par(p1: &Proof, p2: &Proof, r: &Proof) -> Proof {
    let g = p1.conclusion().unwrap().len() - 1;
    let d = p2.conclusion().unwrap().len() - 1;
    let s = r.conclusion().unwrap().len() - 2;
    // r: Σ, ~A, ~B  →  Σ, ~B, ~A
    let r1 = ex(move_perm(s + 2, s, s + 1), r.clone());
    // cut(p1, r1): Γ, Σ, ~B
    let inner = Proof::Cut(Box::new(p1.clone()), Box::new(r1));
    // cut(p2, inner): Δ, Γ, Σ
    let outer = Proof::Cut(Box::new(p2.clone()), Box::new(inner));
    let perm: Vec<usize> = (d..d + g).chain(0..d).chain(d + g..d + g + s).collect();
    ex(perm, outer)
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Proof::*;
        match self {
            Ax(a) => write!(f, "(ax {a})"),
            Cut(p, q) => write!(f, "(cut {p} {q})"),
            Tensor(p, q) => write!(f, "(tensor {p} {q})"),
            Par(p) => write!(f, "(par {p})"),
            With(p, q) => write!(f, "(with {p} {q})"),
            PlusL(b, p) => write!(f, "(plus_l {b} {p})"),
            PlusR(a, p) => write!(f, "(plus_r {a} {p})"),
            Top(g) => {
                write!(f, "(top")?;
                for a in g {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            One => write!(f, "(one)"),
            Bot(p) => write!(f, "(bot {p})"),
            Ex(s, p) => {
                let s: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                write!(f, "(ex ({}) {p})", s.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::dsl::parse_proof_str;

    const WITH_PLUS: &str =
        "(cut (with (ex (1 0) (plus_l ~Y (ax ~X))) (ex (1 0) (plus_r ~X (ax ~Y)))) (plus_r ~X (ax ~Y)))";

    fn seq(src: &str) -> Vec<String> {
        parse_proof_str(src)
            .unwrap()
            .conclusion()
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect()
    }

    #[test]
    fn conclusions() {
        assert_eq!(seq("(ax X)"), ["~X", "X"]);
        assert_eq!(seq("(tensor (ax X) (ax Y))"), ["~X", "~Y", "(tens X Y)"]);
        assert_eq!(seq("(par (tensor (ax X) (ax Y)))"), ["~X", "(par ~Y (tens X Y))"]);
        assert_eq!(seq("(with (ax X) (ax X))"), ["~X", "(with X X)"]);
        assert_eq!(seq("(plus_r Y (ax X))"), ["~X", "(plus Y X)"]);
        assert_eq!(seq("(ex (1 0) (top X))"), ["(top)", "X"]);
        assert_eq!(seq("(bot (one))"), ["(one)", "(bot)"]);
    }

    #[test]
    fn ill_formed_proofs() {
        for src in ["(cut (ax X) (ax X))", "(with (ax X) (ax Y))", "(ex (0 0) (ax X))", "(par (one))"] {
            assert!(matches!(
                parse_proof_str(src).unwrap().conclusion(),
                Err(Error::IllFormedProof(_))
            ));
        }
    }

    #[test]
    fn principal_steps_preserve_conclusions() {
        for src in [
            "(cut (ax X) (ax ~X))",
            "(cut (tensor (ax X) (ax Y)) (par (ex (2 0 1) (tensor (ax X) (ax Y)))))",
            "(cut (with (ax X) (ax X)) (plus_l ~X (ax ~X)))",
            WITH_PLUS,
            "(cut (one) (bot (one)))",
        ] {
            let p = parse_proof_str(src).unwrap();
            let r = p.reduce_step().unwrap();
            assert_eq!(p.conclusion().unwrap(), r.conclusion().unwrap(), "{src}");
        }
    }

    #[test]
    fn reduction_targets() {
        let p = parse_proof_str("(cut (one) (bot (one)))").unwrap();
        assert_eq!(p.reduce_step().unwrap(), Proof::One);
        let p = parse_proof_str(WITH_PLUS).unwrap();
        assert_eq!(
            p.reduce_step().unwrap().to_string(),
            "(cut (ex (1 0) (plus_r ~X (ax ~Y))) (ax ~Y))"
        );
        assert!(matches!(
            parse_proof_str("(ax X)").unwrap().reduce_step(),
            Err(Error::NotReducible(_))
        ));
    }
}
