use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use permderiv::convexity::is_convex;
use permderiv::costas::{
    is_centrosymmetric, is_costas, is_costas_centrosymmetric, is_costas_half, is_costas_signed,
    is_costas_subpermutation, is_k_costas, SignedPermutation,
};
use permderiv::dpair::{is_dpair_realization, DPair};
use permderiv::perm::parse_int_list;
use permderiv::variation::{is_lipschitz, is_mid_alternating};
use permderiv::Permutation;

/// A named yes/no property accepted by `check`, `enumerate` and `count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Costas,
    KCostas(usize),
    OneCostas,
    Convex,
    MidAlternating,
    Centrosymmetric,
    CostasCentrosymmetric,
    Grassmannian,
    Lipschitz(i64),
    DPair(i64, i64),
    CostasSigned,
    CostasHalf(usize),
    CostasSubperm(usize),
    Any,
}

impl FromStr for Property {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once('=') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let need = |what: &str| arg.ok_or_else(|| anyhow!("property `{name}` needs `={what}`"));
        let prop = match name {
            "costas" => Property::Costas,
            "k-costas" => Property::KCostas(
                need("K")?
                    .parse()
                    .context("K must be a nonnegative integer")?,
            ),
            "one-costas" => Property::OneCostas,
            "convex" => Property::Convex,
            "mid-alternating" => Property::MidAlternating,
            "centrosymmetric" => Property::Centrosymmetric,
            "costas-centrosymmetric" => Property::CostasCentrosymmetric,
            "grassmannian" => Property::Grassmannian,
            "lipschitz" => Property::Lipschitz(need("L")?.parse().context("L must be an integer")?),
            "dpair" => {
                let v = parse_int_list(need("P,Q")?)?;
                let [p, q] = v[..] else {
                    bail!("dpair needs exactly two values, got {}", v.len());
                };
                DPair::new(p, q)?;
                Property::DPair(p, q)
            }
            "costas-signed" => Property::CostasSigned,
            "costas-half" => {
                Property::CostasHalf(need("M")?.parse().context("M must be a positive integer")?)
            }
            "costas-subperm" => {
                Property::CostasSubperm(need("N")?.parse().context("N must be a positive integer")?)
            }
            "any" => Property::Any,
            _ => bail!("unknown property `{name}`"),
        };
        let takes_arg = matches!(
            prop,
            Property::KCostas(_)
                | Property::Lipschitz(_)
                | Property::DPair(..)
                | Property::CostasHalf(_)
                | Property::CostasSubperm(_)
        );
        if arg.is_some() && !takes_arg {
            bail!("property `{name}` takes no argument");
        }
        Ok(prop)
    }
}

impl Property {
    /// Properties that take a sequence other than a permutation.
    pub fn takes_sequence(self) -> bool {
        matches!(
            self,
            Property::CostasSigned | Property::CostasHalf(_) | Property::CostasSubperm(_)
        )
    }

    /// Evaluates the property on the textual input of `check`.
    pub fn check_input(self, input: &str) -> Result<bool> {
        match self {
            Property::CostasSigned => Ok(is_costas_signed(&input.parse::<SignedPermutation>()?)),
            Property::CostasHalf(m) => Ok(is_costas_half(&parse_int_list(input)?, m)),
            Property::CostasSubperm(n) => {
                let s = parse_int_list(input)?;
                if s.is_empty() {
                    bail!("sequence must be nonempty");
                }
                Ok(is_costas_subpermutation(&s, n))
            }
            _ => self.holds(&input.parse::<Permutation>()?),
        }
    }

    /// Evaluates a permutation property.
    pub fn holds(self, p: &Permutation) -> Result<bool> {
        Ok(match self {
            Property::Costas => is_costas(p),
            Property::KCostas(k) => is_k_costas(p, k)?,
            Property::OneCostas => p.derivative().is_injective(),
            Property::Convex => is_convex(p),
            Property::MidAlternating => is_mid_alternating(p),
            Property::Centrosymmetric => is_centrosymmetric(p),
            Property::CostasCentrosymmetric => is_costas_centrosymmetric(p),
            Property::Grassmannian => p.is_grassmannian(),
            Property::Lipschitz(l) => is_lipschitz(p, l),
            Property::DPair(a, b) => is_dpair_realization(p, DPair::new(a, b)?),
            Property::Any => true,
            Property::CostasSigned | Property::CostasHalf(_) | Property::CostasSubperm(_) => {
                bail!("this property applies to sequences, not permutations")
            }
        })
    }
}
