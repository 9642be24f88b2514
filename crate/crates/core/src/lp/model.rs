use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient type.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Free,
    NonNeg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub bound: Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// Coarse classification of constraint families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyGroup {
    /// Monotonicity, pinning and compensation limits on g and h.
    Function,
    /// Definitions of the compensated gains gB and gP.
    Definition,
    /// Bounds for profiles where u is unmatched.
    UnmatchedProfile,
    /// Bounds for profiles with a match and no backup.
    NoBackupProfile,
    /// Bounds for profiles with a match and a backup.
    BackupProfile,
    /// Averaging over uniformly distributed profiles.
    Aggregation,
    /// Minimum over the passive/active split, encoded through W.
    Objective,
}

/// Family label, group and description of every constraint family the factory emits.
pub const FAMILIES: &[(&str, FamilyGroup, &str)] = &[
    ("mono_g", FamilyGroup::Function, "g non-decreasing in its last argument"),
    ("mono_h", FamilyGroup::Function, "h non-decreasing in its last argument"),
    ("anti_g", FamilyGroup::Function, "g non-increasing in its first argument"),
    ("anti_h", FamilyGroup::Function, "h non-increasing in its first argument"),
    ("pin_h", FamilyGroup::Function, "h at zero threshold pinned to 0"),
    ("cap_b", FamilyGroup::Function, "1 - g - h at least c*h(1,n)"),
    ("cap_p", FamilyGroup::Function, "g(i,j) - h(j,i) at least c*h(1,n)"),
    ("def_gb", FamilyGroup::Definition, "gB(i,j) = 1 - g(i,j) - h(i,j)"),
    ("def_gp", FamilyGroup::Definition, "gP(i,j) = g(i,j) - h(j,i)"),
    ("u0", FamilyGroup::UnmatchedProfile, "G(iu,-,-) <= mean of gP(iu,.)"),
    ("nb1", FamilyGroup::NoBackupProfile, "G(iu,iv,-), t0 <= iu <= iv"),
    ("nb2", FamilyGroup::NoBackupProfile, "G(iu,iv,-), t0, iv <= iu"),
    ("nb3", FamilyGroup::NoBackupProfile, "G(iu,iv,-), iv <= iu, t0 in {iu-1, iu}"),
    ("nbt1", FamilyGroup::NoBackupProfile, "GT(iu,iv,-), t3 < t0 <= iu <= iv"),
    ("nbt2", FamilyGroup::NoBackupProfile, "GT(iu,iv,-), t3 = t0 <= iu <= iv"),
    ("nbt3", FamilyGroup::NoBackupProfile, "GT(iu,iv,-), t0, iv <= iu, t3 < t0"),
    ("nbt4", FamilyGroup::NoBackupProfile, "GT(iu,iv,-), t0, iv <= iu, t3 = t0"),
    ("nbt5", FamilyGroup::NoBackupProfile, "GT(iu,iv,-), iv <= iu, t0 in {iu-1, iu}"),
    ("b11", FamilyGroup::BackupProfile, "G(iu,iv,ib), t0 <= iu <= iv < ib"),
    ("b12", FamilyGroup::BackupProfile, "G(iu,iv,ib), t0 <= iu <= iv = ib"),
    ("b2", FamilyGroup::BackupProfile, "G(iu,iv,ib), t0, iv <= iu"),
    ("b3", FamilyGroup::BackupProfile, "G(iu,iv,ib), iv <= iu, t0 in {iu-1, iu}"),
    ("agg_u0", FamilyGroup::Aggregation, "Gu(iu) <= G(iu,-,-)"),
    ("agg_nb", FamilyGroup::Aggregation, "Gu(iu) <= average of G(iu,j,-) over j >= s"),
    ("agg_b", FamilyGroup::Aggregation, "Gu(iu) <= average of G(iu,j,bb) over s <= j <= ib"),
    ("fmono_g", FamilyGroup::Function, "g(i) <= g(i+1)"),
    ("fmono_h", FamilyGroup::Function, "h(i) <= h(i+1)"),
    ("fpin_h", FamilyGroup::Function, "h(0) = 0"),
    ("fcap_b", FamilyGroup::Function, "1 - g(i) - h(i) >= h(n)"),
    ("fcap_p", FamilyGroup::Function, "g(i) >= h(n)"),
    ("fu0", FamilyGroup::UnmatchedProfile, "GF(iu,-,-) <= mean of g"),
    ("fpp", FamilyGroup::BackupProfile, "GF(iu,vP,bP) <= g(iu)"),
    ("fp0", FamilyGroup::NoBackupProfile, "GF(iu,vP,-) for each t0"),
    ("fpa", FamilyGroup::BackupProfile, "GF(iu,vP,bA) for each ib, t0"),
    ("fa0_c1", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 < t1, gain g(iu)"),
    ("fa0_c2", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 < t1, gain gB(iv)"),
    ("fa0_c3", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 < t1 at left end, gain g(iu)"),
    ("fa0_c4", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 < t1 at left end, gain gB(iv)"),
    ("fa0e_c1", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 = t1, gain g(iu)"),
    ("fa0e_c2", FamilyGroup::NoBackupProfile, "GF(iu,vA,-), t0 = t1, gain gB(iv)"),
    ("faa_c1", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1, pair gB(ib), gB(iv)"),
    ("faa_c2", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1, pair gB(ib), g(iu)"),
    ("faa_c3", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1, pair g(iu), g(iu)"),
    ("faa_c4", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1 at left end, pair gB(ib), gB(iv)"),
    ("faa_c5", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1 at left end, pair gB(ib), g(iu)"),
    ("faa_c6", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 < t1 at left end, pair g(iu), g(iu)"),
    ("faae_c1", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 = t1, pair gB(ib), gB(iv)"),
    ("faae_c2", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 = t1, pair gB(ib), g(iu)"),
    ("faae_c3", FamilyGroup::BackupProfile, "GF(iu,vA,bA), t0 = t1, pair g(iu), g(iu)"),
    ("fagg_p0", FamilyGroup::Aggregation, "GFP(iu) <= GF(iu,vP,-)"),
    ("fagg_pp", FamilyGroup::Aggregation, "GFP(iu) <= GF(iu,vP,bP)"),
    ("fagg_pa", FamilyGroup::Aggregation, "GFP(iu) <= GF(iu,vP,bA) for each ib"),
    ("fagg_u0", FamilyGroup::Aggregation, "GFA(iu) <= GF(iu,-,-)"),
    ("fagg_a0", FamilyGroup::Aggregation, "GFA(iu) <= average of GF(iu,vA,-) over iv >= s"),
    ("fagg_aa", FamilyGroup::Aggregation, "GFA(iu) <= average of GF(iu,vA,bA=bb) over s <= iv <= ib"),
    ("fobj", FamilyGroup::Objective, "W <= (1/n)[sum of GFP up to t + sum of GFA after t]"),
];

/// Provenance of a constraint: family label and index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tag {
    pub family: String,
    pub index: Vec<usize>,
}

impl Tag {
    pub fn new(family: &str, index: &[usize]) -> Self {
        Tag { family: family.to_string(), index: index.to_vec() }
    }

    pub fn group(&self) -> Option<FamilyGroup> {
        FAMILIES.iter().find(|f| f.0 == self.family).map(|f| f.1)
    }

    /// Identifier form, e.g. `nb1_2_3_0`.
    pub fn row_name(&self) -> String {
        let mut s = self.family.clone();
        for i in &self.index {
            s.push('_');
            s.push_str(&i.to_string());
        }
        s
    }

    /// Inverse of [`Tag::row_name`]: trailing numeric segments form the index.
    pub fn from_row_name(name: &str) -> Tag {
        let parts: Vec<&str> = name.split('_').collect();
        let split = parts.iter().rposition(|p| p.parse::<usize>().is_err()).map_or(0, |i| i + 1);
        Tag {
            family: parts[..split].join("_"),
            index: parts[split..].iter().map(|p| p.parse().unwrap()).collect(),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
        write!(f, "{}({})", self.family, idx.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub tag: Tag,
    /// Sorted by variable id, no zero coefficients.
    pub terms: Vec<(usize, Q)>,
    pub sense: Sense,
    pub rhs: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Simple,
    Tightened,
    OddGirth(u32),
    Franking,
    /// Hand-built model outside the four families.
    Custom,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Simple => write!(f, "simple"),
            Variant::Tightened => write!(f, "tightened"),
            Variant::OddGirth(k) => write!(f, "oddgirth{k}"),
            Variant::Franking => write!(f, "franking"),
            Variant::Custom => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Variant::Simple),
            "tightened" => Ok(Variant::Tightened),
            "franking" => Ok(Variant::Franking),
            "custom" => Ok(Variant::Custom),
            _ => s
                .strip_prefix("oddgirth")
                .and_then(|k| k.parse().ok())
                .map(Variant::OddGirth)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown variant {s}"))),
        }
    }
}

/// A maximization LP with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpModel {
    pub variant: Variant,
    pub n: usize,
    variables: Vec<Variable>,
    index: HashMap<String, usize>,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Q)>,
}

impl LpModel {
    pub fn new(variant: Variant, n: usize) -> Self {
        LpModel { variant, n, variables: Vec::new(), index: HashMap::new(), constraints: Vec::new(), objective: Vec::new() }
    }

    /// Id of `name`, declaring it with `bound` if new.
    pub fn var(&mut self, name: &str, bound: Bound) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.variables.push(Variable { name: name.to_string(), bound });
        self.index.insert(name.to_string(), self.variables.len() - 1);
        self.variables.len() - 1
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Q)] {
        &self.objective
    }

    pub fn set_objective(&mut self, terms: impl IntoIterator<Item = (usize, Q)>) {
        self.objective = normalize(terms);
    }

    /// Adds `Σ terms (sense) rhs`.
    pub fn add(&mut self, tag: Tag, terms: impl IntoIterator<Item = (usize, Q)>, sense: Sense, rhs: Q) {
        self.constraints.push(Constraint { tag, terms: normalize(terms), sense, rhs });
    }

    /// Adds `var <= (e.terms + e.constant) / n`.
    pub fn add_bound(&mut self, tag: Tag, var: usize, e: &Expr) {
        let n = self.n as i64;
        let terms = std::iter::once((var, q(1))).chain(e.terms.iter().map(|(&v, &c)| (v, -c / n)));
        self.add(tag, terms, Sense::Le, e.constant / n);
    }

    /// Checks that constraints reference only declared variables and every
    /// variable appears somewhere.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.variables.len()];
        for c in &self.constraints {
            for &(v, _) in &c.terms {
                *used.get_mut(v).ok_or_else(|| Error::MissingVariable(format!("id {v} in {}", c.tag)))? = true;
            }
        }
        match used.iter().position(|u| !u) {
            Some(v) => Err(Error::InvalidParameter(format!("variable {} appears in no constraint", self.variables[v].name))),
            None => Ok(()),
        }
    }

    /// One line per constraint: tag, then the relation with rational coefficients.
    pub fn dump(&self) -> String {
        let mut out = format!("# {} n={}\n", self.variant, self.n);
        out.push_str(&format!("max {}\n", self.render(&self.objective)));
        for c in &self.constraints {
            out.push_str(&format!("{} : {} {} {}\n", c.tag, self.render(&c.terms), c.sense.symbol(), c.rhs));
        }
        out
    }

    fn render(&self, terms: &[(usize, Q)]) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (v, c)) in terms.iter().enumerate() {
            let name = &self.variables[*v].name;
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 || c.is_negative() {
                s.push_str(sign);
                if k > 0 {
                    s.push(' ');
                }
            }
            let a = c.abs();
            if a == q(1) {
                s.push_str(name);
            } else {
                s.push_str(&format!("{a} {name}"));
            }
            s.push(' ');
        }
        s.pop();
        s
    }

    /// Number of constraints per family label.
    pub fn family_counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for c in &self.constraints {
            *m.entry(c.tag.family.clone()).or_insert(0) += 1;
        }
        m
    }
}

fn normalize(terms: impl IntoIterator<Item = (usize, Q)>) -> Vec<(usize, Q)> {
    let mut m: BTreeMap<usize, Q> = BTreeMap::new();
    for (v, c) in terms {
        *m.entry(v).or_insert_with(Q::zero) += c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Linear expression `Σ c·var + constant`.
#[derive(Clone, Debug, Default)]
pub struct Expr {
    pub terms: BTreeMap<usize, Q>,
    pub constant: Q,
}

impl Expr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn t(&mut self, c: impl Into<Q>, var: usize) -> &mut Self {
        let c = c.into();
        if !c.is_zero() {
            *self.terms.entry(var).or_insert_with(Q::zero) += c;
        }
        self
    }

    pub fn k(&mut self, c: impl Into<Q>) -> &mut Self {
        self.constant += c.into();
        self
    }
}
