use serde::{Deserialize, Serialize};

use super::Analyzer;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::greedy::{check_permutation, franking_list, ranking_list, MatchingTrace, QueryList, RankVector};

/// Whether a match was realized at the vertex's own decision time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "A")]
    Active,
    #[serde(rename = "P")]
    Passive,
}

/// u's match `v` and backup `b` in the run without `u*`, with their ranks
/// and u's activity in each match.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub u: Vertex,
    pub x_u: f64,
    pub v: Option<Vertex>,
    pub x_v: Option<f64>,
    pub v_tag: Option<Tag>,
    pub b: Option<Vertex>,
    pub x_b: Option<f64>,
    pub b_tag: Option<Tag>,
}

/// The six profile classes of FRanking, by (v-match tag, b-match tag).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProfileKind {
    /// u unmatched.
    Unmatched,
    PassiveNoBackup,
    PassivePassive,
    PassiveActive,
    ActiveNoBackup,
    ActiveActive,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 6] = [
        ProfileKind::Unmatched,
        ProfileKind::PassiveNoBackup,
        ProfileKind::PassivePassive,
        ProfileKind::PassiveActive,
        ProfileKind::ActiveNoBackup,
        ProfileKind::ActiveActive,
    ];
}

impl Profile {
    /// Class of the tag combination; `None` for the combination that never occurs.
    pub fn kind(&self) -> Option<ProfileKind> {
        use Tag::*;
        match (self.v_tag, self.b_tag) {
            (None, None) => Some(ProfileKind::Unmatched),
            (Some(Passive), None) => Some(ProfileKind::PassiveNoBackup),
            (Some(Passive), Some(Passive)) => Some(ProfileKind::PassivePassive),
            (Some(Passive), Some(Active)) => Some(ProfileKind::PassiveActive),
            (Some(Active), None) => Some(ProfileKind::ActiveNoBackup),
            (Some(Active), Some(Active)) => Some(ProfileKind::ActiveActive),
            _ => None,
        }
    }
}

fn tag(t: &MatchingTrace, u: Vertex) -> Option<Tag> {
    t.mate(u).map(|_| if t.is_active(u) { Tag::Active } else { Tag::Passive })
}

impl Analyzer<'_> {
    fn profile_from_list(&self, list: &QueryList, x: &RankVector, u: Vertex) -> Result<Profile> {
        let run = self.run(list);
        let v = run.mate(u);
        let backup_run = match v {
            Some(v) => Some(self.run(&list.exclude(&[v])?)),
            None => None,
        };
        let b = backup_run.as_ref().and_then(|r| r.mate(u));
        Ok(Profile {
            u,
            x_u: x.get(u),
            v,
            x_v: v.map(|w| x.get(w)),
            v_tag: tag(&run, u),
            b,
            x_b: b.map(|w| x.get(w)),
            b_tag: backup_run.as_ref().and_then(|r| tag(r, u)),
        })
    }

    /// Profile of `u` under Ranking with ranks `x` and `u*` excluded.
    /// Fails if a backup does not outrank the match.
    pub fn ranking_profile(&self, x: &RankVector, u: Vertex, ustar: Vertex) -> Result<Profile> {
        if u == ustar {
            return Err(Error::Precondition("u and u* must differ".into()));
        }
        let list = ranking_list(x).exclude(&[ustar])?;
        let p = self.profile_from_list(&list, x, u)?;
        if let (Some(xv), Some(xb)) = (p.x_v, p.x_b) {
            if xv >= xb {
                return Err(Error::StructuralViolation(format!("Ranking backup rank {xb} not above match rank {xv}")));
            }
        }
        Ok(p)
    }

    /// Profile of `u` under FRanking with decision order `pi`, ranks `x` and
    /// `u*` excluded. Requires u to decide before u*. Fails on a tag
    /// combination outside the six classes, or an active match with an
    /// active backup that does not outrank it.
    pub fn franking_profile(&self, pi: &[Vertex], x: &RankVector, u: Vertex, ustar: Vertex) -> Result<Profile> {
        check_permutation(pi, x.len())?;
        let pos = |w: Vertex| pi.iter().position(|&z| z == w).unwrap();
        if u == ustar || pos(u) > pos(ustar) {
            return Err(Error::Precondition(format!("u = {u} must decide before u* = {ustar}")));
        }
        let list = franking_list(pi, x)?.exclude(&[ustar])?;
        let p = self.profile_from_list(&list, x, u)?;
        match p.kind() {
            None => Err(Error::StructuralViolation(format!("profile tags {:?}/{:?} outside the six classes", p.v_tag, p.b_tag))),
            Some(ProfileKind::ActiveActive) if p.x_v >= p.x_b => Err(Error::StructuralViolation(format!(
                "active backup rank {:?} not above active match rank {:?}",
                p.x_b, p.x_v
            ))),
            _ => Ok(p),
        }
    }
}
