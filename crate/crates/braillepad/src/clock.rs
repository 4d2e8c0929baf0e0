//! Wall-clock text format shared by scripts, frames and `schedule.rec`.

use chrono::NaiveDateTime;

const MINUTE: &str = "%Y-%m-%dT%H:%M";
const SECOND: &str = "%Y-%m-%dT%H:%M:%S";

/// `YYYY-MM-DDTHH:MM`, seconds appended only when nonzero.
pub fn format_datetime(t: NaiveDateTime) -> String {
    use chrono::Timelike;
    if t.second() == 0 {
        t.format(MINUTE).to_string()
    } else {
        t.format(SECOND).to_string()
    }
}

pub fn parse_datetime(s: &str) -> Option<NaiveDateTime> {
    let s = s.trim();
    NaiveDateTime::parse_from_str(s, MINUTE)
        .or_else(|_| NaiveDateTime::parse_from_str(s, SECOND))
        .ok()
}

/// `#[serde(with = "crate::clock::iso")]`
pub mod iso {
    use chrono::NaiveDateTime;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &NaiveDateTime, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_datetime(*t))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<NaiveDateTime, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_datetime(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("expected YYYY-MM-DDTHH:MM, got {s:?}")))
    }
}
