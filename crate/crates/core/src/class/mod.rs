//! Classes of groups used as the `F` in the non-F graph, membership for
//! subgroups of an ambient group, and the derived class `F_2`.

mod iso;
mod profile;

pub use iso::{
    are_isomorphic, find_embedding, has_subgroup_isomorphic, has_subgroup_isomorphic_within,
    short_generating_sequence, IsoOutcome, Pattern, DEFAULT_ISO_BUDGET,
};
pub use profile::{
    f2_member, f2_member_in, prime_profile, two_recognizability_report, PrimeProfile,
    TwoRecognizabilityReport, TwoRecognizabilityRow,
};

use std::fmt;
use std::path::Path;

use crate::corpus::read_group_file;
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::{
    derived_subgroup, gens_of, is_soluble, is_supersoluble, normal_closure_in, primes_of,
};

/// Which closure properties a class claims. Checked against the corpus in
/// tests, never assumed silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeclaredClosure {
    pub subgroup_closed: bool,
    pub quotient_closed: bool,
    pub soluble_only: bool,
}

/// A forbidden subgroup: name as given in the spec string, the group, and
/// its search pattern.
#[derive(Clone, Debug)]
pub struct Forbidden {
    pub name: String,
    pub hash: String,
    pub pattern: Pattern,
}

impl Forbidden {
    pub fn new(name: impl Into<String>, group: &FiniteGroup) -> Forbidden {
        Forbidden {
            name: name.into(),
            hash: group.structure_hash(),
            pattern: Pattern::new(group),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.pattern.group
    }
}

#[derive(Clone, Debug)]
pub enum ClassKind {
    Cyclic,
    /// Groups of prime-power order.
    OnePrime,
    /// Groups whose order has at most two prime divisors.
    TwoPrimes,
    Abelian,
    Nilpotent,
    Soluble,
    Supersoluble,
    Metabelian,
    /// Groups with nilpotent derived subgroup.
    NilpotentDerived,
    FittingLengthLe(usize),
    /// Groups with no subgroup isomorphic to any listed group.
    Forbidden(Vec<Forbidden>),
    /// `F_2`: groups all of whose 2-generated subgroups lie in the inner
    /// class.
    F2Of(Box<ClassSpec>),
}

#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub kind: ClassKind,
    pub closure: DeclaredClosure,
    /// Node budget for forbidden-subgroup searches.
    pub iso_budget: u64,
}

impl ClassSpec {
    pub fn new(kind: ClassKind) -> ClassSpec {
        let closure = match &kind {
            ClassKind::Forbidden(_) => DeclaredClosure {
                subgroup_closed: true,
                quotient_closed: false,
                soluble_only: false,
            },
            ClassKind::F2Of(inner) => DeclaredClosure {
                subgroup_closed: inner.closure.subgroup_closed,
                quotient_closed: false,
                soluble_only: inner.closure.soluble_only,
            },
            _ => DeclaredClosure {
                subgroup_closed: true,
                quotient_closed: true,
                soluble_only: true,
            },
        };
        ClassSpec {
            kind,
            closure,
            iso_budget: DEFAULT_ISO_BUDGET,
        }
    }

    pub fn cyclic() -> ClassSpec {
        ClassSpec::new(ClassKind::Cyclic)
    }

    pub fn f2(&self) -> ClassSpec {
        ClassSpec::new(ClassKind::F2Of(Box::new(self.clone())))
    }

    pub fn forbidden(groups: Vec<Forbidden>) -> ClassSpec {
        ClassSpec::new(ClassKind::Forbidden(groups))
    }

    /// Parses specs without forbidden-subgroup references resolved against
    /// an ambient group; `forbid:` entries are read as group files.
    pub fn parse(text: &str) -> Result<ClassSpec> {
        ClassSpec::parse_with(text, None)
    }

    /// `forbid:` entries name a provenance subgroup of `ambient` or a group
    /// file path, in that order of preference.
    pub fn parse_with(text: &str, ambient: Option<&FiniteGroup>) -> Result<ClassSpec> {
        let t = text.trim();
        let kind = match t {
            "cyclic" => ClassKind::Cyclic,
            "oneprime" | "p-groups" => ClassKind::OnePrime,
            "twoprimes" => ClassKind::TwoPrimes,
            "abelian" => ClassKind::Abelian,
            "nilpotent" => ClassKind::Nilpotent,
            "soluble" | "solvable" => ClassKind::Soluble,
            "supersoluble" | "supersolvable" => ClassKind::Supersoluble,
            "metabelian" => ClassKind::Metabelian,
            "nilpotent-derived" => ClassKind::NilpotentDerived,
            _ => {
                if let Some(rest) = t.strip_prefix("fitting<=") {
                    let n: usize = rest
                        .parse()
                        .map_err(|_| GroupError::Parse(format!("bad Fitting length bound {rest:?}")))?;
                    if n == 0 {
                        return Err(GroupError::Parse("Fitting length bound must be positive".into()));
                    }
                    ClassKind::FittingLengthLe(n)
                } else if let Some(rest) = t.strip_prefix("f2:") {
                    ClassKind::F2Of(Box::new(ClassSpec::parse_with(rest, ambient)?))
                } else if let Some(rest) = t.strip_prefix("forbid:") {
                    let mut list = Vec::new();
                    for name in rest.split(',').map(str::trim) {
                        if name.is_empty() {
                            return Err(GroupError::Parse("empty forbidden-subgroup reference".into()));
                        }
                        list.push(resolve_forbidden(name, ambient)?);
                    }
                    ClassKind::Forbidden(list)
                } else {
                    return Err(GroupError::Parse(format!("unknown class spec {t:?}")));
                }
            }
        };
        Ok(ClassSpec::new(kind))
    }

    /// Membership of the whole group.
    pub fn is_member(&self, g: &FiniteGroup) -> Result<bool> {
        self.contains(g, &g.whole())
    }

    /// Membership of the subgroup `h` of `g`.
    pub fn contains(&self, g: &FiniteGroup, h: &ElementSet) -> Result<bool> {
        let n = h.len();
        Ok(match &self.kind {
            ClassKind::Cyclic => h.iter().any(|x| g.elem_order(x) == n),
            ClassKind::OnePrime => primes_of(n).len() <= 1,
            ClassKind::TwoPrimes => primes_of(n).len() <= 2,
            ClassKind::Abelian => {
                let hg = gens_of(g, h);
                hg.iter()
                    .all(|&a| hg.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
            ClassKind::Nilpotent => lower_central_reaches_one(g, h),
            ClassKind::Soluble => is_soluble(g, h),
            ClassKind::Supersoluble => is_supersoluble(g, h),
            ClassKind::Metabelian => {
                let d = derived_subgroup(g, h);
                derived_subgroup(g, &d).len() == 1
            }
            ClassKind::NilpotentDerived => lower_central_reaches_one(g, &derived_subgroup(g, h)),
            ClassKind::FittingLengthLe(t) => fitting_length(g, h).is_some_and(|l| l <= *t),
            ClassKind::Forbidden(list) => {
                for f in list {
                    if iso::has_subgroup_isomorphic_within(g, h, &f.pattern, self.iso_budget)? {
                        return Ok(false);
                    }
                }
                true
            }
            ClassKind::F2Of(inner) => f2_member_in(inner, g, h)?,
        })
    }

    /// Whether membership is expensive enough to be worth memoizing.
    pub fn is_expensive(&self) -> bool {
        match &self.kind {
            ClassKind::Forbidden(_) | ClassKind::F2Of(_) | ClassKind::Supersoluble => true,
            ClassKind::FittingLengthLe(_) => true,
            _ => false,
        }
    }

    /// Cheap necessary condition for a subgroup of order `n` to lie outside
    /// the class; `false` means membership is certain.
    pub fn may_exclude_order(&self, n: usize) -> bool {
        match &self.kind {
            ClassKind::Forbidden(list) => list.iter().any(|f| n % f.pattern.order() == 0),
            ClassKind::OnePrime => primes_of(n).len() > 1,
            ClassKind::TwoPrimes => primes_of(n).len() > 2,
            _ => n > 1,
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::Cyclic => write!(f, "cyclic"),
            ClassKind::OnePrime => write!(f, "oneprime"),
            ClassKind::TwoPrimes => write!(f, "twoprimes"),
            ClassKind::Abelian => write!(f, "abelian"),
            ClassKind::Nilpotent => write!(f, "nilpotent"),
            ClassKind::Soluble => write!(f, "soluble"),
            ClassKind::Supersoluble => write!(f, "supersoluble"),
            ClassKind::Metabelian => write!(f, "metabelian"),
            ClassKind::NilpotentDerived => write!(f, "nilpotent-derived"),
            ClassKind::FittingLengthLe(t) => write!(f, "fitting<={t}"),
            ClassKind::Forbidden(list) => {
                let names: Vec<&str> = list.iter().map(|x| x.name.as_str()).collect();
                write!(f, "forbid:{}", names.join(","))
            }
            ClassKind::F2Of(inner) => write!(f, "f2:{inner}"),
        }
    }
}

fn resolve_forbidden(name: &str, ambient: Option<&FiniteGroup>) -> Result<Forbidden> {
    if let Some(g) = ambient {
        if let Some(set) = g.provenance().subgroups.get(name) {
            let mut set = set.clone();
            if set.generators().is_empty() {
                set.set_generators(&gens_of(g, &set));
            }
            let sub = g.subgroup(&set).materialize()?;
            return Ok(Forbidden::new(name, &sub));
        }
    }
    let path = Path::new(name);
    if path.exists() {
        let b = read_group_file(path)?;
        return Ok(Forbidden::new(name, &b));
    }
    Err(GroupError::Parse(format!(
        "forbidden subgroup {name:?} is neither a named subgroup of the group nor a readable file"
    )))
}

/// `[N, h]` for `N` normal in `h`: normal closure of generator commutators.
fn commutator_with(g: &FiniteGroup, n: &ElementSet, h: &ElementSet) -> ElementSet {
    let ng = gens_of(g, n);
    let hg = gens_of(g, h);
    let mut comms = Vec::new();
    for &a in &ng {
        for &s in &hg {
            let c = g.commutator(a, s);
            if c != 0 && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure_in(g, h, &comms)
}

/// Last term of the lower central series of `h`.
pub fn nilpotent_residual(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let mut cur = h.clone();
    loop {
        let next = commutator_with(g, &cur, h);
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

fn lower_central_reaches_one(g: &FiniteGroup, h: &ElementSet) -> bool {
    nilpotent_residual(g, h).len() == 1
}

/// Length of the lower nilpotent series, `None` for insoluble `h`.
pub fn fitting_length(g: &FiniteGroup, h: &ElementSet) -> Option<usize> {
    let mut cur = h.clone();
    let mut len = 0;
    while cur.len() > 1 {
        let r = nilpotent_residual(g, &cur);
        if r.len() == cur.len() {
            return None;
        }
        cur = r;
        len += 1;
    }
    Some(len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::subgroup::{is_nilpotent, is_supersoluble_by_maximals};

    fn spec(s: &str) -> ClassSpec {
        ClassSpec::parse(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let v4 = corpus::elementary_abelian(2, 2).unwrap();
        assert!(spec("cyclic").is_member(&c12).unwrap());
        assert!(!spec("cyclic").is_member(&v4).unwrap());
        let s3 = corpus::symmetric(3).unwrap();
        let c30 = FiniteGroup::cyclic(30).unwrap();
        assert!(spec("twoprimes").is_member(&s3).unwrap());
        assert!(!spec("twoprimes").is_member(&c30).unwrap());
        let p = corpus::sylow2_sym8().unwrap();
        assert!(!spec("metabelian").is_member(&p).unwrap());
        assert_eq!(
            crate::subgroup::derived_length(&p, &p.whole()),
            Some(3)
        );
    }

    #[test]
    fn nilpotency_routes_agree() {
        for name in crate::corpus::CORPUS {
            let g = corpus::FamilySpec::parse(name).unwrap();
            if g.expected_order() > 200 {
                continue;
            }
            let g = g.construct().unwrap();
            let w = g.whole();
            assert_eq!(
                spec("nilpotent").contains(&g, &w).unwrap(),
                is_nilpotent(&g, &w),
                "{name}"
            );
            assert_eq!(
                spec("supersoluble").contains(&g, &w).unwrap(),
                is_soluble(&g, &w) && is_supersoluble_by_maximals(&g).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn fitting_lengths() {
        let s4 = corpus::symmetric(4).unwrap();
        assert_eq!(fitting_length(&s4, &s4.whole()), Some(3));
        let s3 = corpus::symmetric(3).unwrap();
        assert_eq!(fitting_length(&s3, &s3.whole()), Some(2));
        let a5 = corpus::alternating(5).unwrap();
        assert_eq!(fitting_length(&a5, &a5.whole()), None);
        assert!(spec("fitting<=2").is_member(&s3).unwrap());
        assert!(!spec("fitting<=2").is_member(&s4).unwrap());
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "cyclic",
            "oneprime",
            "twoprimes",
            "abelian",
            "nilpotent",
            "soluble",
            "supersoluble",
            "metabelian",
            "nilpotent-derived",
            "fitting<=3",
            "f2:metabelian",
        ] {
            assert_eq!(spec(s).to_string(), s);
        }
        assert!(ClassSpec::parse("fitting<=0").is_err());
        assert!(ClassSpec::parse("bogus").is_err());
        assert!(ClassSpec::parse("forbid:/no/such/file").is_err());
    }

    #[test]
    fn forbidden_by_provenance_name() {
        let x = corpus::example1_inner(3).unwrap();
        let s = ClassSpec::parse_with("forbid:Q", Some(&x)).unwrap();
        assert_eq!(s.to_string(), "forbid:Q");
        assert!(!s.is_member(&x).unwrap());
        let q = x.provenance().subgroups["V1"].clone();
        assert!(s.contains(&x, &q).unwrap());
        assert!(!s.closure.quotient_closed && s.closure.subgroup_closed);
    }
}
