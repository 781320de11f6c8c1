//! Serde helpers writing exact rationals as "p/q" strings.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{parse_q, Q};

pub fn serialize<S: Serializer>(m: &BTreeMap<String, Q>, s: S) -> Result<S::Ok, S::Error> {
    let out: BTreeMap<&String, String> = m.iter().map(|(k, v)| (k, v.to_string())).collect();
    out.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Q>, D::Error> {
    let raw = BTreeMap::<String, String>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| match parse_q(&v) {
            Some(x) => Ok((k, x)),
            None => Err(D::Error::custom(format!("bad rational {v:?} for {k}"))),
        })
        .collect()
}

pub mod list {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::poly::{parse_q, Q};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|v| parse_q(&v).ok_or_else(|| D::Error::custom(format!("bad rational {v:?}"))))
            .collect()
    }
}
