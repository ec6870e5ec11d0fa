//! Construction specs: `{"tag": ..., <params>}` documents naming a constructor.

use quadcert_core::field::{Field, FieldKind, PrimeField, Rationals};
use quadcert_core::geometry::ProjPoint;
use quadcert_core::varieties::{
    elliptic_normal_curve, genus_three_curve, linear_space, point_config_on_rnc, point_list,
    projected_elliptic, rational_curve_with_4secant, rational_normal_curve, scroll, scroll_divisor,
    scroll_divisor_with_form, Tag, VarietyRep,
};
use quadcert_core::poly::MultiPoly;
use serde::Deserialize;

use crate::formats::{parse_field_kind, AnyVariety, FormatError, FormatResult};

/// Every constructor parameter; each tag reads the ones it needs.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructSpec {
    pub tag: String,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default)]
    pub c: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default, rename = "type")]
    pub scroll_type: Option<Vec<u32>>,
    #[serde(default)]
    pub a: Option<i64>,
    #[serde(default)]
    pub b: Option<i64>,
    #[serde(default)]
    pub form: Option<String>,
    #[serde(default, rename = "A")]
    pub weierstrass_a: Option<String>,
    #[serde(default, rename = "B")]
    pub weierstrass_b: Option<String>,
    #[serde(default)]
    pub points: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub complete: Option<bool>,
    /// Variety to project, for `Projection`.
    #[serde(default)]
    pub of: Option<Box<ConstructSpec>>,
    #[serde(default)]
    pub center: Option<Vec<String>>,
}

fn need<T: Clone>(v: &Option<T>, name: &str, tag: &str) -> FormatResult<T> {
    v.clone()
        .ok_or_else(|| FormatError::Invalid(format!("{tag} needs `{name}`")))
}

impl ConstructSpec {
    pub fn from_json(s: &str) -> FormatResult<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Builds the variety over the spec's field, falling back to `default_field`.
    pub fn build(&self, default_field: FieldKind, default_seed: u64) -> FormatResult<AnyVariety> {
        let kind = match &self.field {
            Some(s) => parse_field_kind(s)?,
            None => default_field,
        };
        let seed = self.seed.unwrap_or(default_seed);
        Ok(match kind {
            FieldKind::Rationals => AnyVariety::Rational(self.build_in(&Rationals, seed)?),
            FieldKind::Prime(p) => AnyVariety::Prime(self.build_in(&PrimeField::with_override(p)?, seed)?),
        })
    }

    fn build_in<F: Field>(&self, f: &F, seed: u64) -> FormatResult<VarietyRep<F>> {
        let tag = Tag::from_name(&self.tag)?;
        let t = self.tag.as_str();
        let v = match tag {
            Tag::Rnc => rational_normal_curve(f, need(&self.r, "r", t)?)?,
            Tag::Scroll => scroll(f, &need(&self.scroll_type, "type", t)?)?,
            Tag::ScrollDivisor => {
                let ty = need(&self.scroll_type, "type", t)?;
                let a = need(&self.a, "a", t)?;
                let a = u32::try_from(a).map_err(|_| FormatError::Invalid("`a` must be >= 0".into()))?;
                let b = need(&self.b, "b", t)?;
                match &self.form {
                    Some(g) => scroll_divisor_with_form(f, &ty, a, b, MultiPoly::parse(f, ty.len() + 2, g)?)?,
                    None => scroll_divisor(f, &ty, a, b, seed)?,
                }
            }
            Tag::EllipticNormal => {
                let c = need(&self.c, "c", t)?;
                let a = f.parse(&need(&self.weierstrass_a, "A", t)?)?;
                let b = f.parse(&need(&self.weierstrass_b, "B", t)?)?;
                elliptic_normal_curve(f, c, &a, &b)?
            }
            Tag::ProjectedElliptic => projected_elliptic(f, need(&self.c, "c", t)?, seed)?,
            Tag::RationalWithMSecant => rational_curve_with_4secant(f, need(&self.c, "c", t)?, seed)?,
            Tag::PlaneQuarticEmbedding => genus_three_curve(f, self.c.unwrap_or(4), seed)?,
            Tag::PointConfig => match &self.points {
                Some(ps) => point_list(f, tag, self.parse_points(f, ps)?, self.complete.unwrap_or(true))?,
                None => point_config_on_rnc(f, need(&self.c, "c", t)?, need(&self.m, "m", t)?, seed)?,
            },
            Tag::LinearSpace => linear_space(f, self.parse_points(f, &need(&self.points, "points", t)?)?)?,
            Tag::Projection => {
                let base = need(&self.of, "of", t)?.build_in(f, seed)?;
                let center = ProjPoint::new(f, parse_vec(f, &need(&self.center, "center", t)?)?)?;
                base.project(&center)?
            }
        };
        Ok(v)
    }

    fn parse_points<F: Field>(&self, f: &F, ps: &[Vec<String>]) -> FormatResult<Vec<ProjPoint<F>>> {
        ps.iter().map(|p| Ok(ProjPoint::new(f, parse_vec(f, p)?)?)).collect()
    }
}

fn parse_vec<F: Field>(f: &F, v: &[String]) -> FormatResult<Vec<F::Elem>> {
    Ok(v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadcert_core::field::DEFAULT_PRIME;

    #[test]
    fn builds_listed_examples() {
        let p = FieldKind::Prime(DEFAULT_PRIME);
        let v = ConstructSpec::from_json(r#"{"tag":"RNC","r":3}"#).unwrap().build(p, 0).unwrap();
        assert_eq!(v.invariants(), (1, 2, 3, Some(0)));
        let s = ConstructSpec::from_json(r#"{"tag":"Scroll","type":[1,2]}"#).unwrap().build(p, 0).unwrap();
        assert_eq!(s.invariants().0, 2);
        let e = ConstructSpec::from_json(r#"{"tag":"EllipticNormal","c":3,"A":"-1","B":"0"}"#)
            .unwrap()
            .build(p, 0)
            .unwrap();
        assert_eq!(e.invariants(), (1, 3, 5, Some(1)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ConstructSpec::from_json(r#"{"tag":"Nope"}"#).unwrap().build(FieldKind::Rationals, 0).is_err());
        assert!(ConstructSpec::from_json(r#"{"tag":"RNC"}"#).unwrap().build(FieldKind::Rationals, 0).is_err());
        assert!(ConstructSpec::from_json(r#"{"tag":"RNC","q":1}"#).is_err());
        // singular Weierstrass cubic
        let s = r#"{"tag":"EllipticNormal","c":3,"A":"0","B":"0"}"#;
        assert!(ConstructSpec::from_json(s).unwrap().build(FieldKind::Prime(DEFAULT_PRIME), 0).is_err());
    }
}
