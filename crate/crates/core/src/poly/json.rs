//! JSON form: `[[s_exp, t_exp, "coeff"], ...]` in canonical order.
//! Coefficients are decimal strings so no reader truncates them.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Polynomial;

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(&(t.s_exp, t.t_exp, t.coeff.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(u64, u64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (s, t, c) in raw {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient {c:?}")))?;
            terms.push((s, t, c));
        }
        Polynomial::from_terms(terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let f: Polynomial = "s^3 + 2*s*t".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"[[3,0,"1"],[1,1,"2"]]"#
        );
        assert_eq!(serde_json::to_string(&Polynomial::zero()).unwrap(), "[]");
        let back: Polynomial = serde_json::from_str(r#"[[1,1,"2"],[3,0,"1"]]"#).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(serde_json::from_str::<Polynomial>(r#"[[1,0,"1.5"]]"#).is_err());
        assert!(serde_json::from_str::<Polynomial>(r#"[[-1,0,"1"]]"#).is_err());
        assert!(serde_json::from_str::<Polynomial>(r#"[[8589934592,0,"1"]]"#).is_err());
    }
}
