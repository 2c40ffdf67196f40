use serde::Serialize;

use super::{membership, MembershipCertificate, MonoidKind, PuiseuxMonoidSpec};
use crate::arith::Rational;
use crate::error::{domain, Result};

/// How the principal ideals `x_n + M` and `x_{n+1} + M` compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkStatus {
    /// `x_{n+1} | x_n` and not conversely.
    Proper,
    /// Both divisibilities hold: the ideals coincide.
    Equal,
    /// `x_{n+1} | x_n` could not be certified at this depth.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub index: usize,
    pub from: Rational,
    pub to: Rational,
    /// certificate for `x_n - x_{n+1}`
    pub forward: Option<MembershipCertificate>,
    /// certificate for `x_{n+1} - x_n`
    pub backward: Option<MembershipCertificate>,
    pub status: LinkStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub depth: usize,
    pub links: Vec<LinkReport>,
    /// every link is an inclusion and the last one is an equality
    pub stabilizes: bool,
    /// every link is a proper inclusion
    pub all_proper: bool,
}

/// Probes the chain of principal ideals `x_0 + M ⊆ x_1 + M ⊆ ...`.
pub fn accp_chain_probe(chain: &[Rational], spec: &PuiseuxMonoidSpec) -> ChainReport {
    let links: Vec<LinkReport> = chain
        .windows(2)
        .enumerate()
        .map(|(index, w)| {
            let forward = membership(&(&w[0] - &w[1]), spec);
            let backward = membership(&(&w[1] - &w[0]), spec);
            let status = match (&forward, &backward) {
                (None, _) => LinkStatus::Unverified,
                (Some(_), None) => LinkStatus::Proper,
                (Some(_), Some(_)) => LinkStatus::Equal,
            };
            LinkReport { index, from: w[0].clone(), to: w[1].clone(), forward, backward, status }
        })
        .collect();
    let inclusions = links.iter().all(|l| l.status != LinkStatus::Unverified);
    let stabilizes = inclusions && links.last().is_some_and(|l| l.status == LinkStatus::Equal);
    let all_proper = links.iter().all(|l| l.status == LinkStatus::Proper);
    ChainReport { depth: spec.depth, links, stabilizes, all_proper }
}

/// The chain `1, 1/q, ..., 1/q^n_max` of `M_{q,r}`.
pub fn mqr_chain(spec: &PuiseuxMonoidSpec, n_max: usize) -> Result<Vec<Rational>> {
    let MonoidKind::Mqr(s) = &spec.kind else {
        return domain("the chain 1/q^n needs an M_{q,r} monoid");
    };
    let q = Rational::from_integer(s.q());
    (0..=n_max).map(|n| q.pow(n as i32)?.recip()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mqr_chain_is_proper() {
        let m = PuiseuxMonoidSpec::mqr(2, 3, 6).unwrap();
        let chain = mqr_chain(&m, 6).unwrap();
        let rep = accp_chain_probe(&chain, &m);
        assert_eq!(rep.links.len(), 6);
        assert!(rep.all_proper && !rep.stabilizes);
        for l in &rep.links {
            let w = l.forward.as_ref().unwrap().labeled(&m);
            let n = l.index + 1;
            assert_eq!(w, [(format!("a{n}"), 1), (format!("b{n}"), 1)].into_iter().collect());
        }
    }

    #[test]
    fn integers_stabilize() {
        let n0 = PuiseuxMonoidSpec::explicit(vec![Rational::one()]).unwrap();
        assert!(mqr_chain(&n0, 3).is_err());
        let chain: Vec<Rational> = [4, 3, 2, 1, 0, 0].into_iter().map(Rational::from).collect();
        let rep = accp_chain_probe(&chain, &n0);
        assert!(rep.stabilizes && !rep.all_proper);
        let up: Vec<Rational> = (0..4).map(Rational::from).collect();
        let rep = accp_chain_probe(&up, &n0);
        assert!(rep.links.iter().all(|l| l.status == LinkStatus::Unverified));
    }
}
