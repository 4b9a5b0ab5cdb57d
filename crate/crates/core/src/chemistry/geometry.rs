use std::str::FromStr;

use crate::error::{invalid_arg, Error, Result};

/// CODATA 2018 Bohr radius in Ångström.
pub const ANGSTROM_PER_BOHR: f64 = 0.529177210903;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthUnit {
    Angstrom,
    Bohr,
}

impl LengthUnit {
    pub fn to_bohr(self, value: f64) -> f64 {
        match self {
            LengthUnit::Angstrom => value / ANGSTROM_PER_BOHR,
            LengthUnit::Bohr => value,
        }
    }
}

impl FromStr for LengthUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "angstrom" | "a" => Ok(LengthUnit::Angstrom),
            "bohr" => Ok(LengthUnit::Bohr),
            other => Err(invalid_arg(format!("unknown length unit '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub symbol: String,
    pub nuclear_charge: u32,
    /// Bohr.
    pub position: [f64; 3],
}

const ELEMENTS: [&str; 10] = ["H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"];

impl Atom {
    pub fn new(symbol: &str, position_bohr: [f64; 3]) -> Result<Self> {
        let z = ELEMENTS
            .iter()
            .position(|&e| e == symbol)
            .ok_or_else(|| Error::Unsupported(format!("unknown element '{symbol}'")))?;
        Ok(Self { symbol: symbol.to_string(), nuclear_charge: z as u32 + 1, position: position_bohr })
    }
}

/// Nuclear framework plus total charge and spin multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeGeometry {
    pub atoms: Vec<Atom>,
    pub charge: i32,
    pub multiplicity: u32,
}

impl MoleculeGeometry {
    /// Closed-shell molecule; rejects odd electron counts and non-singlets.
    pub fn new(atoms: Vec<Atom>, charge: i32, multiplicity: u32) -> Result<Self> {
        if atoms.is_empty() {
            return Err(invalid_arg("geometry has no atoms"));
        }
        if multiplicity != 1 {
            return Err(Error::Unsupported(format!("multiplicity {multiplicity}; only singlets are supported")));
        }
        let geom = Self { atoms, charge, multiplicity };
        let total: i64 = geom.atoms.iter().map(|a| a.nuclear_charge as i64).sum::<i64>() - charge as i64;
        if total < 0 || total % 2 != 0 {
            return Err(invalid_arg(format!("{total} electrons cannot form a closed shell")));
        }
        Ok(geom)
    }

    /// Two hydrogens on the z axis at `+-d/2`, `d` in Ångström.
    pub fn hydrogen_molecule(distance_angstrom: f64) -> Result<Self> {
        if !(distance_angstrom > 0.0) || !distance_angstrom.is_finite() {
            return Err(invalid_arg(format!("bond distance must be positive, got {distance_angstrom}")));
        }
        let half = LengthUnit::Angstrom.to_bohr(distance_angstrom) / 2.0;
        Self::new(vec![Atom::new("H", [0.0, 0.0, -half])?, Atom::new("H", [0.0, 0.0, half])?], 0, 1)
    }

    /// Parses `SYMBOL x y z` lines; `#` starts a comment.
    pub fn from_xyz_lines(text: &str, unit: LengthUnit) -> Result<Self> {
        let mut atoms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(invalid_arg(format!("line {}: expected `SYMBOL x y z`", lineno + 1)));
            }
            let mut pos = [0.0; 3];
            for (k, f) in fields[1..].iter().enumerate() {
                let v: f64 = f
                    .parse()
                    .map_err(|_| invalid_arg(format!("line {}: bad coordinate '{f}'", lineno + 1)))?;
                pos[k] = unit.to_bohr(v);
            }
            atoms.push(Atom::new(fields[0], pos)?);
        }
        Self::new(atoms, 0, 1)
    }

    pub fn n_electrons(&self) -> usize {
        (self.atoms.iter().map(|a| a.nuclear_charge as i64).sum::<i64>() - self.charge as i64) as usize
    }

    pub fn translated(&self, shift: [f64; 3]) -> Self {
        let mut out = self.clone();
        for a in &mut out.atoms {
            for k in 0..3 {
                a.position[k] += shift[k];
            }
        }
        out
    }

    /// Applies a 3x3 rotation matrix to every position.
    pub fn rotated(&self, rot: [[f64; 3]; 3]) -> Self {
        let mut out = self.clone();
        for a in &mut out.atoms {
            let p = a.position;
            a.position = [0, 1, 2].map(|i| (0..3).map(|j| rot[i][j] * p[j]).sum());
        }
        out
    }
}

pub(crate) fn distance_sq(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).powi(2)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_molecule_layout() {
        let g = MoleculeGeometry::hydrogen_molecule(0.725).unwrap();
        assert_eq!(g.n_electrons(), 2);
        let d = distance_sq(g.atoms[0].position, g.atoms[1].position).sqrt();
        assert!((d * ANGSTROM_PER_BOHR - 0.725).abs() < 1e-14);
        assert!(MoleculeGeometry::hydrogen_molecule(0.0).is_err());
        assert!(MoleculeGeometry::hydrogen_molecule(-1.0).is_err());
    }

    #[test]
    fn parse_xyz() {
        let g = MoleculeGeometry::from_xyz_lines("# h2\nH 0 0 0\nH 0 0 1.4\n", LengthUnit::Bohr).unwrap();
        assert_eq!(g.atoms.len(), 2);
        assert_eq!(g.atoms[1].position, [0.0, 0.0, 1.4]);
        assert!(MoleculeGeometry::from_xyz_lines("H 0 0\n", LengthUnit::Bohr).is_err());
        assert!(MoleculeGeometry::from_xyz_lines("Xx 0 0 0\nH 0 0 1\n", LengthUnit::Bohr).is_err());
        // one hydrogen: odd electron count
        assert!(MoleculeGeometry::from_xyz_lines("H 0 0 0\n", LengthUnit::Bohr).is_err());
        assert_eq!("angstrom".parse::<LengthUnit>().unwrap(), LengthUnit::Angstrom);
    }

    #[test]
    fn open_shell_rejected() {
        let atoms = vec![Atom::new("H", [0.0; 3]).unwrap(), Atom::new("H", [0.0, 0.0, 1.4]).unwrap()];
        assert!(matches!(MoleculeGeometry::new(atoms, 0, 3), Err(Error::Unsupported(_))));
    }
}
