use std::str::FromStr;

use crate::Failure;

/// start:stop:step, both ends inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' is not start:stop:step"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("grid '{s}': {e}"));
        let g = Grid {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            step: num(parts[2])?,
        };
        if !(g.start.is_finite() && g.stop.is_finite() && g.step.is_finite()) {
            return Err(format!("grid '{s}' is not finite"));
        }
        Ok(g)
    }
}

impl Grid {
    /// Grid points, rounded to 12 decimals so that 0.01:0.99:0.01 gives
    /// exactly 0.07 rather than 0.07000000000000001.
    pub fn points(&self) -> Vec<f64> {
        if self.step <= 0.0 || self.stop < self.start {
            return Vec::new();
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }

    /// Points checked against the domain: [0, 1) for Ferrers functions,
    /// (1, ∞) for functions on the cut.
    pub fn points_for(&self, on_cut: bool) -> Result<Vec<f64>, Failure> {
        let pts = self.points();
        if pts.is_empty() {
            return Err(Failure::Usage("grid is empty".into()));
        }
        for &t in &pts {
            let ok = if on_cut { t > 1.0 } else { (0.0..1.0).contains(&t) };
            if !ok {
                let domain = if on_cut { "(1, inf)" } else { "[0, 1)" };
                return Err(Failure::Usage(format!("grid point {t} outside {domain}")));
            }
        }
        Ok(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_and_rounded() {
        let g: Grid = "0.01:0.99:0.01".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 99);
        assert_eq!(p[6], 0.07);
        assert_eq!(p[98], 0.99);
    }

    #[test]
    fn empty_and_malformed() {
        assert!("0.5:0.1:0.1".parse::<Grid>().unwrap().points().is_empty());
        assert!("0.1:0.5:0".parse::<Grid>().unwrap().points().is_empty());
        assert!("0.1:0.5".parse::<Grid>().is_err());
        assert!("a:b:c".parse::<Grid>().is_err());
    }

    #[test]
    fn domain_is_checked() {
        let g: Grid = "0.5:1.0:0.25".parse().unwrap();
        assert!(g.points_for(false).is_err());
        assert!(g.points_for(true).is_err());
        let g: Grid = "1.5:2.5:0.5".parse().unwrap();
        assert_eq!(g.points_for(true).unwrap().len(), 3);
    }
}
