//! Natural deduction for both languages: proof trees, a checking kernel,
//! substitution on proofs, proof generators and the proof translations
//! between the two languages.

mod build;
mod generators;
mod io;
mod kernel;
mod subst;
mod translate;

use std::fmt;

use crate::syntax::{Abstraction, Binder, Formula, Term};

pub use build::Ctx;
pub use generators::{prove_congruence, prove_iff_refl, prove_idempotent, prove_sc2, Hole};
pub use io::{parse_proof, write_proof, ProofFileError};
pub use kernel::{check, Rejection};
pub use subst::{freshen_eigenvariables, subst_proof};
pub use translate::{derive_transprooftrois, translate_down, translate_up, TranslateError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    Intuitionistic,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    First,
    Second,
}

/// `Γ ⊢ C` together with the logic and language it is stated in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub hyps: Vec<Formula>,
    pub concl: Formula,
    pub logic: Logic,
    pub order: Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax,
    BotE,
    Raa,
    ImplI,
    ImplE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    Forall1I,
    Forall1E,
    Exists1I,
    Exists1E,
    Forall2I,
    Forall2E,
    Exists2I,
    Exists2E,
}

pub const RULES: [Rule; 19] = [
    Rule::Ax,
    Rule::BotE,
    Rule::Raa,
    Rule::ImplI,
    Rule::ImplE,
    Rule::AndI,
    Rule::AndE1,
    Rule::AndE2,
    Rule::OrI1,
    Rule::OrI2,
    Rule::OrE,
    Rule::Forall1I,
    Rule::Forall1E,
    Rule::Exists1I,
    Rule::Exists1E,
    Rule::Forall2I,
    Rule::Forall2E,
    Rule::Exists2I,
    Rule::Exists2E,
];

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::BotE => "bot-e",
            Rule::Raa => "raa",
            Rule::ImplI => "impl-i",
            Rule::ImplE => "impl-e",
            Rule::AndI => "and-i",
            Rule::AndE1 => "and-e1",
            Rule::AndE2 => "and-e2",
            Rule::OrI1 => "or-i1",
            Rule::OrI2 => "or-i2",
            Rule::OrE => "or-e",
            Rule::Forall1I => "forall1-i",
            Rule::Forall1E => "forall1-e",
            Rule::Exists1I => "exists1-i",
            Rule::Exists1E => "exists1-e",
            Rule::Forall2I => "forall2-i",
            Rule::Forall2E => "forall2-e",
            Rule::Exists2I => "exists2-i",
            Rule::Exists2E => "exists2-e",
        }
    }

    pub fn from_id(s: &str) -> Option<Rule> {
        RULES.iter().copied().find(|r| r.id() == s)
    }

    pub fn is_second_order(self) -> bool {
        matches!(self, Rule::Forall2I | Rule::Forall2E | Rule::Exists2I | Rule::Exists2E)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Rule-specific data: the eigenvariable of `∀I`/`∃E`, the term of a
/// first-order `∀E`/`∃I`, the abstraction of a second-order `∀E`/`∃I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    None,
    Eigen(Binder),
    Term(Term),
    Lambda(Abstraction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub payload: Payload,
    pub seq: Sequent,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn concl(&self) -> &Formula {
        &self.seq.concl
    }

    pub fn hyps(&self) -> &[Formula] {
        &self.seq.hyps
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// The same proof with every sequent relabelled to `logic`. Turning an
    /// intuitionistic proof classical is always sound.
    pub fn with_logic(mut self, logic: Logic) -> Proof {
        self.seq.logic = logic;
        self.premises = self.premises.into_iter().map(|p| p.with_logic(logic)).collect();
        self
    }

    /// Every rule used in the tree.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hyps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        let k = match self.logic {
            Logic::Intuitionistic => "i",
            Logic::Classical => "c",
        };
        let n = match self.order {
            Order::First => 1,
            Order::Second => 2,
        };
        write!(f, " |-{k}{n} {}", self.concl)
    }
}
