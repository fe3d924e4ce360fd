//! Run configuration: cap overrides from the INDMOD_CAPS environment
//! variable and the shared character / Cartan-matrix argument parsing.

use indmod_core::rootsys::{CartanMatrix, Weight};
use indmod_core::{Caps, Subset};

/// Caps, with overrides from `INDMOD_CAPS="key=value,key=value"`.
/// Unknown keys and malformed entries are rejected.
pub fn caps_from_env() -> Result<Caps, String> {
    let mut caps = Caps::default();
    let Ok(raw) = std::env::var("INDMOD_CAPS") else {
        return Ok(caps);
    };
    for entry in raw.split(',').filter(|s| !s.trim().is_empty()) {
        let Some((key, value)) = entry.split_once('=') else {
            return Err(format!("INDMOD_CAPS entry without '=': {entry}"));
        };
        let value: u128 = value
            .trim()
            .parse()
            .map_err(|_| format!("INDMOD_CAPS value not an integer: {entry}"))?;
        match key.trim() {
            "max_rank" => caps.max_rank = value as usize,
            "max_positive_roots" => caps.max_positive_roots = value as usize,
            "max_group_order" => caps.max_group_order = value as usize,
            "max_sl2_weight" => caps.max_sl2_weight = value,
            "max_module_dim" => caps.max_module_dim = value as usize,
            "max_field_degree" => caps.max_field_degree = value as usize,
            "max_function_model_group" => caps.max_function_model_group = value as u64,
            "max_lattice_size" => caps.max_lattice_size = value as usize,
            other => return Err(format!("unknown INDMOD_CAPS key: {other}")),
        }
        if value == 0 {
            return Err(format!("INDMOD_CAPS value must be positive: {entry}"));
        }
    }
    Ok(caps)
}

/// "c1,c2,..." in fundamental-weight coordinates.
pub fn parse_theta(raw: &str) -> Result<Weight, String> {
    let coords: Result<Vec<i64>, _> =
        raw.split(',').map(|c| c.trim().parse::<i64>()).collect();
    coords
        .map(Weight::new)
        .map_err(|_| format!("could not parse character coordinates: {raw}"))
}

/// "1,3" as 1-based simple indices.
pub fn parse_index_set(raw: &str, rank: usize) -> Result<Subset, String> {
    let mut out = Subset::EMPTY;
    if raw.trim().is_empty() {
        return Ok(out);
    }
    for part in raw.split(',') {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("could not parse index: {part}"))?;
        if idx == 0 || idx > rank {
            return Err(format!("index {idx} out of range 1..={rank}"));
        }
        out.insert(idx - 1);
    }
    Ok(out)
}

/// Rows separated by ';', entries by ',': "2,-1;-1,2".
pub fn parse_cartan(raw: &str) -> Result<CartanMatrix, String> {
    let rows: Result<Vec<Vec<i64>>, String> = raw
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("could not parse Cartan entry: {c}"))
                })
                .collect()
        })
        .collect();
    CartanMatrix::new(rows?).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inputs() {
        assert_eq!(parse_theta("0,-3").unwrap().coords, vec![0, -3]);
        assert_eq!(parse_index_set("1,3", 4).unwrap(), Subset::from_indices(&[0, 2]));
        assert!(parse_index_set("5", 4).is_err());
        assert!(parse_index_set("0", 4).is_err());
        let cartan = parse_cartan("2,-1;-1,2").unwrap();
        assert_eq!(cartan.rank(), 2);
        assert!(parse_cartan("2,-1;-1").is_err());
    }
}
