//! JSON encodings of fans, partitions, posets, presentations, arrangements and CW data.
//!
//! Cones are written as sorted lists of ray indices, so documents stay readable and do
//! not depend on internal face numbering.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arrangement::{Arrangement, Flat, Shard};
use crate::category::Category;
use crate::cw::CwComplex;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::group::{Abelianization, Presentation};
use crate::linalg::IVec;
use crate::partition::Partition;
use crate::poset::FanPoset;

fn parse_err(what: &str) -> Error {
    Error::Parse(what.to_string())
}

pub fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn ivec_json(v: &IVec) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| parse_err(what))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| parse_err(what)))
        .collect()
}

fn usize_vec(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(what))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| parse_err(what)))
        .collect()
}

pub fn cone_json(fan: &Fan, face: usize) -> Value {
    json!(fan.face(face))
}

pub fn face_from_json(fan: &Fan, v: &Value) -> Result<usize> {
    let mut cone = usize_vec(v, "cone")?;
    cone.sort_unstable();
    fan.id_of(&cone)
}

pub fn fan_to_json(fan: &Fan) -> Value {
    json!({
        "dim": fan.dim(),
        "rays": fan.rays().iter().map(ivec_json).collect::<Vec<_>>(),
        "cones": fan.max_cones(),
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan> {
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| parse_err("fan.dim"))? as usize;
    let rays: Vec<Vec<i64>> = v
        .get("rays")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("fan.rays"))?
        .iter()
        .map(|r| int_vec(r, "fan.rays"))
        .collect::<Result<_>>()?;
    let cones: Vec<Vec<usize>> = v
        .get("cones")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("fan.cones"))?
        .iter()
        .map(|c| usize_vec(c, "fan.cones"))
        .collect::<Result<_>>()?;
    Fan::from_ints(dim, &rays, &cones)
}

pub fn partition_to_json(fan: &Fan, p: &Partition) -> Value {
    let blocks: Vec<Vec<Value>> = p.blocks().iter().map(|b| b.iter().map(|&c| cone_json(fan, c)).collect()).collect();
    json!({ "blocks": blocks })
}

pub fn partition_from_json(fan: &Fan, v: &Value) -> Result<Partition> {
    let blocks: Vec<Vec<usize>> = v
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("partition.blocks"))?
        .iter()
        .map(|b| {
            b.as_array()
                .ok_or_else(|| parse_err("partition.blocks"))?
                .iter()
                .map(|c| face_from_json(fan, c))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Partition::from_blocks(fan, &blocks)
}

pub fn poset_to_json(fan: &Fan, p: &FanPoset) -> Value {
    let covers: Vec<Value> = p
        .covers()
        .iter()
        .map(|c| json!({ "lower": fan.face(c.lower), "upper": fan.face(c.upper), "wall": fan.face(c.wall) }))
        .collect();
    json!({
        "covers": covers,
        "minimum": p.minimum().map(|m| cone_json(fan, m)),
        "maximum": p.maximum().map(|m| cone_json(fan, m)),
    })
}

pub fn poset_from_json(fan: &Fan, v: &Value) -> Result<FanPoset> {
    let pairs: Vec<(usize, usize)> = v
        .get("covers")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("poset.covers"))?
        .iter()
        .map(|c| {
            let lo = face_from_json(fan, c.get("lower").ok_or_else(|| parse_err("poset.lower"))?)?;
            let hi = face_from_json(fan, c.get("upper").ok_or_else(|| parse_err("poset.upper"))?)?;
            Ok((lo, hi))
        })
        .collect::<Result<_>>()?;
    FanPoset::from_covers(fan, &pairs)
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|r| r.render(&p.generators)).collect::<Vec<_>>(),
        "text": p.to_text(),
    })
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation> {
    let text = v.get("text").and_then(Value::as_str).ok_or_else(|| parse_err("presentation.text"))?;
    Presentation::parse_text(text).ok_or_else(|| parse_err("presentation.text"))
}

pub fn abelianization_json(a: &Abelianization) -> Value {
    json!({
        "free_rank": a.free_rank,
        "torsion": a.torsion.iter().map(int_json).collect::<Vec<_>>(),
        "text": a.to_string(),
    })
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    json!({ "dim": a.dim(), "normals": a.normals().iter().map(ivec_json).collect::<Vec<_>>() })
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement> {
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| parse_err("arrangement.dim"))? as usize;
    let normals: Vec<Vec<i64>> = v
        .get("normals")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("arrangement.normals"))?
        .iter()
        .map(|n| int_vec(n, "arrangement.normals"))
        .collect::<Result<_>>()?;
    Arrangement::new(dim, &normals)
}

pub fn flat_json(a: &Arrangement, f: &Flat) -> Value {
    json!({
        "hyperplanes": f.hyperplanes.iter().map(|&h| ivec_json(&a.normals()[h])).collect::<Vec<_>>(),
        "basis": f.basis.iter().map(ivec_json).collect::<Vec<_>>(),
    })
}

pub fn shards_json(fan: &Fan, a: &Arrangement, shards: &[Shard]) -> Value {
    let mut by_h: Map<String, Value> = Map::new();
    for h in 0..a.len() {
        let key = a.normals()[h].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let list: Vec<Value> = shards
            .iter()
            .filter(|s| s.hyperplane == h)
            .map(|s| Value::Array(s.walls.iter().map(|&w| cone_json(fan, w)).collect()))
            .collect();
        by_h.insert(key, Value::Array(list));
    }
    json!({ "count": shards.len(), "by_hyperplane": by_h })
}

pub fn category_json(cat: &Category) -> Value {
    let fan = cat.fan();
    let objects: Vec<Value> = cat
        .partition()
        .blocks()
        .iter()
        .map(|b| Value::Array(b.iter().map(|&c| cone_json(fan, c)).collect()))
        .collect();
    let morphisms: Vec<Value> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(id, m)| {
            json!({
                "id": id,
                "source": m.src,
                "target": m.tgt,
                "rank": m.rank,
                "cone": m.cone.iter().map(ivec_json).collect::<Vec<_>>(),
                "representatives": m.reps.iter().map(|&(s, t)| json!([fan.face(s), fan.face(t)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "objects": objects, "morphisms": morphisms })
}

pub fn cw_json(fan: &Fan, p: &Partition, cw: &CwComplex) -> Value {
    let cells: Vec<Value> = cw
        .cells
        .iter()
        .map(|blocks| Value::Array(blocks.iter().map(|&b| Value::Array(p.block(b).iter().map(|&c| cone_json(fan, c)).collect())).collect()))
        .collect();
    let names = cw.one_cell_names();
    json!({
        "cell_counts": cw.cell_counts(),
        "cells": cells,
        "one_skeleton": cw.one_cells.iter().map(|e| json!({ "name": e.name, "tail": e.tail, "head": e.head })).collect::<Vec<_>>(),
        "two_cells": cw.two_cells.iter().map(|c| json!({ "block": p.block(c.block).iter().map(|&f| cone_json(fan, f)).collect::<Vec<_>>(), "word": c.word.render(&names) })).collect::<Vec<_>>(),
        "euler": cw.euler_characteristic(),
    })
}

fn parse_cone_token(tok: &str) -> Result<Vec<usize>> {
    let tok = tok.trim();
    if tok == "0" {
        return Ok(Vec::new());
    }
    if let Some(n) = tok.strip_prefix('s') {
        let i: usize = n.parse().map_err(|_| parse_err(tok))?;
        if i == 0 {
            return Err(parse_err(tok));
        }
        return Ok(vec![i - 1]);
    }
    let inner = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| parse_err(tok))?;
    let mut v: Vec<usize> = inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| parse_err(tok)))
        .collect::<Result<_>>()?;
    v.sort_unstable();
    Ok(v)
}

/// Seed pairs such as `s1~s3,s2~s4` (rays, 1-based) or `[0,1]~[2,3]` (ray-index lists).
pub fn parse_seeds(fan: &Fan, s: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut items = Vec::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            items.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        items.push(cur);
    }
    for item in items {
        let (a, b) = item.split_once('~').ok_or_else(|| parse_err(&item))?;
        let ca = parse_cone_token(a)?;
        let cb = parse_cone_token(b)?;
        out.push((fan.id_of(&ca)?, fan.id_of(&cb)?));
    }
    Ok(out)
}

pub fn parse_cone(fan: &Fan, s: &str) -> Result<usize> {
    fan.id_of(&parse_cone_token(s)?)
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| parse_err(s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{fan_hzb, fan_sq, partition_torus};

    #[test]
    fn fan_roundtrip() {
        let fan = fan_hzb(1);
        let back = fan_from_json(&fan_to_json(&fan)).unwrap();
        assert_eq!(back.fingerprint(), fan.fingerprint());
    }

    #[test]
    fn partition_roundtrip() {
        let fan = fan_sq();
        let p = partition_torus(&fan);
        assert_eq!(partition_from_json(&fan, &partition_to_json(&fan, &p)).unwrap(), p);
    }

    #[test]
    fn seeds() {
        let fan = fan_sq();
        let s = parse_seeds(&fan, "s1~s3,s2~s4").unwrap();
        assert_eq!(s, vec![(fan.id_of(&[0]).unwrap(), fan.id_of(&[2]).unwrap()), (fan.id_of(&[1]).unwrap(), fan.id_of(&[3]).unwrap())]);
        let t = parse_seeds(&fan, "[0,1]~[2,3]").unwrap();
        assert_eq!(t.len(), 1);
        assert!(parse_seeds(&fan, "s9~s1").is_err());
    }
}
