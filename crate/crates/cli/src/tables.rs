//! Group tables regenerated from the constructed groups.

use serde_json::json;
use su2free::ade::{ade_group, conjugacy_classes, real_part_set, AdeKind};

const SAMPLE: std::ops::RangeInclusive<u32> = 1..=12;

fn kinds_for(family: &str) -> Vec<AdeKind> {
    match family {
        "Z(n)" => SAMPLE.map(AdeKind::Cyclic).collect(),
        "BD(n)" => SAMPLE.filter(|&n| n >= 2).map(AdeKind::BinaryDihedral).collect(),
        "2T" => vec![AdeKind::BinaryTetrahedral],
        "2O" => vec![AdeKind::BinaryOctahedral],
        _ => vec![AdeKind::BinaryIcosahedral],
    }
}

/// Orders, real-part sets and the conjugacy classes of 2O and 2I.
pub fn render(records: bool) -> Vec<String> {
    let mut out = Vec::new();
    for family in ["Z(n)", "BD(n)", "2T", "2O", "2I"] {
        for k in kinds_for(family) {
            let g = ade_group(k).expect("valid kind");
            let parts: Vec<String> = real_part_set(&g).iter().map(|r| r.to_string()).collect();
            out.push(if records {
                json!({ "table": "groups", "group": k.to_string(), "order": g.order(), "real_parts": parts }).to_string()
            } else {
                format!("groups\t{k}\t{}\t{}", g.order(), parts.join(" "))
            });
        }
    }
    for k in [AdeKind::BinaryOctahedral, AdeKind::BinaryIcosahedral] {
        let g = ade_group(k).expect("valid kind");
        for c in conjugacy_classes(&g) {
            let (rep, re) = (c.representative.to_string(), c.real_part.to_string());
            out.push(if records {
                json!({ "table": "classes", "group": k.to_string(), "representative": rep, "size": c.size, "real_part": re })
                    .to_string()
            } else {
                format!("classes\t{k}\t{rep}\t{}\t{re}", c.size)
            });
        }
    }
    out
}
