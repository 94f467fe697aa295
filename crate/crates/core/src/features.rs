//! Feature values, the eight-feature bundle, and their meet operations.
//!
//! Every value here is a small `Copy` type. Unification is the lattice meet:
//! `Unspec` is the top element and therefore the identity, and two specified
//! values meet only if one refines the other.

use std::fmt;
use std::str::FromStr;

/// A binary feature value, or no constraint at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Polarity {
    Plus,
    Minus,
    #[default]
    Unspec,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Plus, Polarity::Minus, Polarity::Unspec];

    pub fn unify(self, other: Polarity) -> Option<Polarity> {
        unify_polarity(self, other)
    }

    pub fn is_specified(self) -> bool {
        self != Polarity::Unspec
    }

    /// `self ⊑ other`: self carries at least as much information.
    pub fn refines(self, other: Polarity) -> bool {
        other == Polarity::Unspec || self == other
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
            Polarity::Unspec => "*",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Polarity {
    type Err = UnknownValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Polarity::Plus),
            "-" | "\u{2212}" => Ok(Polarity::Minus),
            "*" => Ok(Polarity::Unspec),
            _ => Err(UnknownValue(s.to_string())),
        }
    }
}

/// Third-person number agreement.
///
/// `ThreeSgPl` is the number-neutral value listed for determiners such as
/// *the*; `Unspec` is a blank table cell. Both meet with either atom, but
/// they are kept apart so the tables can be reproduced as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Agr {
    ThreeSg,
    ThreePl,
    ThreeSgPl,
    #[default]
    Unspec,
}

impl Agr {
    pub const ALL: [Agr; 4] = [Agr::ThreeSg, Agr::ThreePl, Agr::ThreeSgPl, Agr::Unspec];

    pub fn unify(self, other: Agr) -> Option<Agr> {
        unify_agr(self, other)
    }

    /// `self ⊑ other` in the order `ThreeSg, ThreePl ⊑ ThreeSgPl ⊑ Unspec`.
    pub fn refines(self, other: Agr) -> bool {
        match (self, other) {
            (_, Agr::Unspec) => true,
            (Agr::Unspec, _) => false,
            (_, Agr::ThreeSgPl) => true,
            (a, b) => a == b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Agr::ThreeSg => "3sg",
            Agr::ThreePl => "3pl",
            Agr::ThreeSgPl => "3sgpl",
            Agr::Unspec => "*",
        }
    }
}

impl fmt::Display for Agr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Agr {
    type Err = UnknownValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3sg" => Ok(Agr::ThreeSg),
            "3pl" => Ok(Agr::ThreePl),
            "3sgpl" => Ok(Agr::ThreeSgPl),
            "*" => Ok(Agr::Unspec),
            _ => Err(UnknownValue(s.to_string())),
        }
    }
}

/// A feature value token that is not in the closed value set.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown feature value `{0}`")]
pub struct UnknownValue(pub String);

/// Meet of two polarities; `None` on a `+`/`-` clash.
pub fn unify_polarity(a: Polarity, b: Polarity) -> Option<Polarity> {
    match (a, b) {
        (Polarity::Unspec, x) | (x, Polarity::Unspec) => Some(x),
        (x, y) if x == y => Some(x),
        _ => None,
    }
}

/// Meet in the agreement lattice; `None` when 3sg meets 3pl.
pub fn unify_agr(a: Agr, b: Agr) -> Option<Agr> {
    match (a, b) {
        (Agr::Unspec, x) | (x, Agr::Unspec) => Some(x),
        (Agr::ThreeSgPl, x) | (x, Agr::ThreeSgPl) => Some(x),
        (x, y) if x == y => Some(x),
        _ => None,
    }
}

/// Names of the eight features, in the fixed diagnostic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Definite,
    Quantity,
    Cardinal,
    Genitive,
    Wh,
    Decreasing,
    Constancy,
    Agr,
}

impl Feature {
    /// The seven binary features, in diagnostic order.
    pub const POLAR: [Feature; 7] = [
        Feature::Definite,
        Feature::Quantity,
        Feature::Cardinal,
        Feature::Genitive,
        Feature::Wh,
        Feature::Decreasing,
        Feature::Constancy,
    ];

    pub const ALL: [Feature; 8] = [
        Feature::Definite,
        Feature::Quantity,
        Feature::Cardinal,
        Feature::Genitive,
        Feature::Wh,
        Feature::Decreasing,
        Feature::Constancy,
        Feature::Agr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Definite => "defin",
            Feature::Quantity => "quan",
            Feature::Cardinal => "card",
            Feature::Genitive => "gen",
            Feature::Wh => "wh",
            Feature::Decreasing => "decreas",
            Feature::Constancy => "const",
            Feature::Agr => "agr",
        }
    }

    pub fn from_name(name: &str) -> Option<Feature> {
        Feature::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The value a bundle carries for one feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FeatureValue {
    Polar(Polarity),
    Agr(Agr),
}

impl FeatureValue {
    pub fn is_specified(self) -> bool {
        !matches!(
            self,
            FeatureValue::Polar(Polarity::Unspec) | FeatureValue::Agr(Agr::Unspec)
        )
    }
}

impl fmt::Display for FeatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Polar(p) => p.fmt(f),
            FeatureValue::Agr(a) => a.fmt(f),
        }
    }
}

/// One determiner's (or DetP node's) values for all eight features.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FeatureBundle {
    pub definite: Polarity,
    pub quantity: Polarity,
    pub cardinal: Polarity,
    pub genitive: Polarity,
    pub wh: Polarity,
    pub decreasing: Polarity,
    pub constancy: Polarity,
    pub agr: Agr,
}

/// The first feature on which two bundles failed to unify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeatureClash {
    pub feature: Feature,
    /// Value required by the restriction.
    pub required: FeatureValue,
    /// Value found on the target.
    pub found: FeatureValue,
}

impl FeatureBundle {
    /// All eight features unspecified.
    pub const UNSPEC: FeatureBundle = FeatureBundle {
        definite: Polarity::Unspec,
        quantity: Polarity::Unspec,
        cardinal: Polarity::Unspec,
        genitive: Polarity::Unspec,
        wh: Polarity::Unspec,
        decreasing: Polarity::Unspec,
        constancy: Polarity::Unspec,
        agr: Agr::Unspec,
    };

    pub fn polarity(&self, feature: Feature) -> Option<Polarity> {
        Some(match feature {
            Feature::Definite => self.definite,
            Feature::Quantity => self.quantity,
            Feature::Cardinal => self.cardinal,
            Feature::Genitive => self.genitive,
            Feature::Wh => self.wh,
            Feature::Decreasing => self.decreasing,
            Feature::Constancy => self.constancy,
            Feature::Agr => return None,
        })
    }

    pub fn get(&self, feature: Feature) -> FeatureValue {
        match self.polarity(feature) {
            Some(p) => FeatureValue::Polar(p),
            None => FeatureValue::Agr(self.agr),
        }
    }

    fn polarity_mut(&mut self, feature: Feature) -> Option<&mut Polarity> {
        Some(match feature {
            Feature::Definite => &mut self.definite,
            Feature::Quantity => &mut self.quantity,
            Feature::Cardinal => &mut self.cardinal,
            Feature::Genitive => &mut self.genitive,
            Feature::Wh => &mut self.wh,
            Feature::Decreasing => &mut self.decreasing,
            Feature::Constancy => &mut self.constancy,
            Feature::Agr => return None,
        })
    }

    /// Builder-style setter for a binary feature. Panics on `Feature::Agr`.
    pub fn with(mut self, feature: Feature, value: Polarity) -> Self {
        *self
            .polarity_mut(feature)
            .expect("agr is not a polar feature; use with_agr") = value;
        self
    }

    pub fn with_agr(mut self, agr: Agr) -> Self {
        self.agr = agr;
        self
    }

    /// Pointwise meet; `None` if any feature clashes.
    pub fn unify(&self, other: &FeatureBundle) -> Option<FeatureBundle> {
        satisfy(self, other)
    }

    /// Pointwise `⊑`.
    pub fn refines(&self, other: &FeatureBundle) -> bool {
        Feature::POLAR
            .iter()
            .all(|&f| self.polarity(f).unwrap().refines(other.polarity(f).unwrap()))
            && self.agr.refines(other.agr)
    }

    /// The specified features only, in diagnostic order.
    pub fn specified(&self) -> impl Iterator<Item = (Feature, FeatureValue)> + '_ {
        Feature::ALL
            .into_iter()
            .map(|f| (f, self.get(f)))
            .filter(|(_, v)| v.is_specified())
    }

    /// `name=value` pairs for the specified features, space separated. This is
    /// the notation used by lexicon files.
    pub fn to_pairs(&self) -> String {
        self.specified()
            .map(|(f, v)| format!("{f}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses space-separated `name=value` pairs. Omitted names stay `Unspec`.
    pub fn parse_pairs(text: &str) -> Result<FeatureBundle, BundleParseError> {
        let mut bundle = FeatureBundle::UNSPEC;
        for pair in text.split_whitespace() {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| BundleParseError::NotAPair(pair.to_string()))?;
            let feature = Feature::from_name(name)
                .ok_or_else(|| BundleParseError::UnknownFeature(name.to_string()))?;
            match bundle.polarity_mut(feature) {
                Some(slot) => {
                    *slot = value
                        .parse()
                        .map_err(|_| BundleParseError::UnknownPolarity(pair.to_string()))?
                }
                None => {
                    bundle.agr = value
                        .parse()
                        .map_err(|_| BundleParseError::UnknownAgr(pair.to_string()))?
                }
            }
        }
        Ok(bundle)
    }
}

impl fmt::Display for FeatureBundle {
    /// All eight features, fixed order, `*` for unspecified.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for feature in Feature::ALL {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}={}", feature, self.get(feature))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BundleParseError {
    #[error("expected name=value, found `{0}`")]
    NotAPair(String),
    #[error("unknown feature `{0}`")]
    UnknownFeature(String),
    #[error("unknown agr value in `{0}`")]
    UnknownAgr(String),
    #[error("unknown polarity value in `{0}`")]
    UnknownPolarity(String),
}

/// Checks `target` against a selectional `restriction` by pointwise meet.
pub fn satisfy(target: &FeatureBundle, restriction: &FeatureBundle) -> Option<FeatureBundle> {
    satisfy_diagnose(target, restriction).ok()
}

/// Like [`satisfy`], but reports the first clashing feature in the order
/// defin, quan, card, gen, wh, decreas, const, agr.
pub fn satisfy_diagnose(
    target: &FeatureBundle,
    restriction: &FeatureBundle,
) -> Result<FeatureBundle, FeatureClash> {
    let mut merged = FeatureBundle::UNSPEC;
    for feature in Feature::POLAR {
        let have = target.polarity(feature).unwrap();
        let want = restriction.polarity(feature).unwrap();
        let meet = unify_polarity(have, want).ok_or(FeatureClash {
            feature,
            required: FeatureValue::Polar(want),
            found: FeatureValue::Polar(have),
        })?;
        *merged.polarity_mut(feature).unwrap() = meet;
    }
    merged.agr = unify_agr(target.agr, restriction.agr).ok_or(FeatureClash {
        feature: Feature::Agr,
        required: FeatureValue::Agr(restriction.agr),
        found: FeatureValue::Agr(target.agr),
    })?;
    Ok(merged)
}
