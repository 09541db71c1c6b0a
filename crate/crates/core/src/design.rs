//! Point/line incidence structures: the binary `(t_i, r)`-regular matrix `M`
//! with girth at least 4 that drives the construction.
//!
//! Two generated families are provided. [`complete_graph_design`] uses the
//! edges of `K_{r+1}` as points and its vertices as lines (every point on two
//! lines). [`affine_design`] takes `t_i` parallel pencils of the affine plane
//! over GF(r). Anything else can be loaded from a 0/1 matrix and is checked
//! by [`validate_design`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power, Field};
use crate::matrix::Matrix;

/// Points are `0..k`; each line is a sorted list of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub k: usize,
    pub r: usize,
    pub t_i: usize,
    pub lines: Vec<Vec<usize>>,
    /// Optional grouping of line indices into parallel classes.
    pub classes: Option<Vec<Vec<usize>>>,
}

/// How far the stated classes go towards a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolvability {
    /// No classes given.
    Unclassified,
    /// Some class contains two lines that meet.
    NotDisjoint,
    /// Lines within each class are pairwise disjoint.
    Disjoint,
    /// Every class partitions the point set and the classes split the lines.
    Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignViolation {
    PointOutOfRange {
        line: usize,
        point: usize,
    },
    RepeatedPoint {
        line: usize,
        point: usize,
    },
    RowWeight {
        line: usize,
        weight: usize,
        expected: usize,
    },
    ColumnWeight {
        point: usize,
        weight: usize,
        expected: usize,
    },
    /// Two lines share at least two points (a 4-cycle).
    SharedPoints {
        lines: (usize, usize),
        points: Vec<usize>,
    },
    ClassOverlap {
        class: usize,
        lines: (usize, usize),
        point: usize,
    },
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DesignViolation::*;
        match self {
            PointOutOfRange { line, point } => {
                write!(f, "line {} names point {} outside the point set", line + 1, point + 1)
            }
            RepeatedPoint { line, point } => write!(f, "line {} lists point {} twice", line + 1, point + 1),
            RowWeight { line, weight, expected } => {
                write!(f, "line {} has {weight} points, expected {expected}", line + 1)
            }
            ColumnWeight {
                point,
                weight,
                expected,
            } => {
                write!(f, "point {} lies on {weight} lines, expected {expected}", point + 1)
            }
            SharedPoints { lines, points } => write!(
                f,
                "lines {} and {} share points {:?}",
                lines.0 + 1,
                lines.1 + 1,
                points.iter().map(|p| p + 1).collect::<Vec<_>>()
            ),
            ClassOverlap { class, lines, point } => write!(
                f,
                "class {} has lines {} and {} meeting in point {}",
                class + 1,
                lines.0 + 1,
                lines.1 + 1,
                point + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignValidation {
    pub valid: bool,
    pub violation: Option<DesignViolation>,
    pub resolvability: Resolvability,
}

impl Design {
    pub fn b(&self) -> usize {
        self.lines.len()
    }

    /// The `b × k` binary incidence matrix `M`.
    pub fn incidence(&self) -> Matrix {
        let mut m = Matrix::zeros(self.b(), self.k);
        for (j, line) in self.lines.iter().enumerate() {
            for &p in line {
                m.set(j, p, 1);
            }
        }
        m
    }

    /// Lines through `point`, in line order.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.b()).filter(|&j| self.lines[j].contains(&point)).collect()
    }

    pub fn to_record(&self) -> DesignRecord {
        DesignRecord {
            k: self.k,
            r: self.r,
            t_i: self.t_i,
            lines: self.lines.iter().map(|l| l.iter().map(|p| p + 1).collect()).collect(),
            classes: self
                .classes
                .as_ref()
                .map(|cs| cs.iter().map(|c| c.iter().map(|j| j + 1).collect()).collect()),
        }
    }

    pub fn from_record(rec: &DesignRecord) -> Result<Design> {
        let to_zero = |v: usize, what: &str| {
            v.checked_sub(1)
                .ok_or_else(|| Error::InvalidDesign(format!("{what} indices are 1-based")))
        };
        let lines = rec
            .lines
            .iter()
            .map(|l| {
                let mut l = l.iter().map(|&p| to_zero(p, "point")).collect::<Result<Vec<_>>>()?;
                l.sort_unstable();
                Ok(l)
            })
            .collect::<Result<Vec<_>>>()?;
        let classes = rec
            .classes
            .as_ref()
            .map(|cs| {
                cs.iter()
                    .map(|c| c.iter().map(|&j| to_zero(j, "line")).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let d = Design {
            k: rec.k,
            r: rec.r,
            t_i: rec.t_i,
            lines,
            classes,
        };
        if let Some(cs) = &d.classes {
            if cs.iter().flatten().any(|&j| j >= d.b()) {
                return Err(Error::InvalidDesign("class names a line that does not exist".into()));
            }
        }
        Ok(d)
    }
}

/// JSON form of a design, with 1-based point and line indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignRecord {
    pub k: usize,
    pub r: usize,
    pub t_i: usize,
    pub lines: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<usize>>>,
}

/// Points are the edges of `K_{r+1}` in lexicographic endpoint order, lines
/// are its vertices. Two vertices share exactly one edge.
pub fn complete_graph_design(r: usize) -> Result<Design> {
    if r < 2 {
        return Err(Error::param("complete-graph design needs r >= 2"));
    }
    let v = r + 1;
    let mut edges = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            edges.push((a, b));
        }
    }
    let lines = (0..v)
        .map(|x| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == x || b == x)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(Design {
        k: edges.len(),
        r,
        t_i: 2,
        lines,
        classes: None,
    })
}

/// `t_i` parallel classes of the affine plane AG(2, r).
///
/// The point in row `y`, column `x` has index `y·r + x` (encodings of GF(r)).
/// Classes take the slopes `0, 1, …` in encoding order, and the vertical
/// pencil supplies the last class. Within a class, lines are ordered by
/// intercept.
pub fn affine_design(r: usize, t_i: usize) -> Result<Design> {
    if prime_power(r).is_none() {
        return Err(Error::param(format!("affine design needs a prime-power r, got {r}")));
    }
    if t_i < 2 || t_i > r + 1 {
        return Err(Error::param(format!(
            "affine design needs 2 <= t_i <= r+1 = {}, got {t_i}",
            r + 1
        )));
    }
    let field = Field::with_order(r)?;
    let point = |y: u16, x: u16| y as usize * r + x as usize;
    let mut lines = Vec::with_capacity(t_i * r);
    let mut classes = Vec::with_capacity(t_i);
    for class in 0..t_i {
        let mut members = Vec::with_capacity(r);
        for c in field.elements() {
            let mut line: Vec<usize> = if class == t_i - 1 {
                field.elements().map(|y| point(y, c)).collect()
            } else {
                let slope = class as u16;
                field
                    .elements()
                    .map(|x| point(field.add(field.mul(slope, x), c), x))
                    .collect()
            };
            line.sort_unstable();
            members.push(lines.len());
            lines.push(line);
        }
        classes.push(members);
    }
    Ok(Design {
        k: r * r,
        r,
        t_i,
        lines,
        classes: Some(classes),
    })
}

/// Checks uniform weights, girth at least 4, and (if classes are present)
/// that each class consists of pairwise disjoint lines. The resolvability
/// level is reported separately.
pub fn validate_design(d: &Design, t_i: usize, r: usize) -> DesignValidation {
    let violation = first_violation(d, t_i, r);
    let resolvability = resolvability(d);
    let class_ok = resolvability != Resolvability::NotDisjoint;
    let violation = violation.or_else(|| if class_ok { None } else { class_overlap(d) });
    DesignValidation {
        valid: violation.is_none(),
        violation,
        resolvability,
    }
}

fn first_violation(d: &Design, t_i: usize, r: usize) -> Option<DesignViolation> {
    for (j, line) in d.lines.iter().enumerate() {
        for (idx, &p) in line.iter().enumerate() {
            if p >= d.k {
                return Some(DesignViolation::PointOutOfRange { line: j, point: p });
            }
            if line[..idx].contains(&p) {
                return Some(DesignViolation::RepeatedPoint { line: j, point: p });
            }
        }
    }
    for (j, line) in d.lines.iter().enumerate() {
        if line.len() != r {
            return Some(DesignViolation::RowWeight {
                line: j,
                weight: line.len(),
                expected: r,
            });
        }
    }
    for a in 0..d.b() {
        for b in a + 1..d.b() {
            let shared: Vec<usize> = d.lines[a].iter().copied().filter(|p| d.lines[b].contains(p)).collect();
            if shared.len() >= 2 {
                return Some(DesignViolation::SharedPoints {
                    lines: (a, b),
                    points: shared,
                });
            }
        }
    }
    let mut degree = vec![0; d.k];
    for &p in d.lines.iter().flatten() {
        degree[p] += 1;
    }
    if let Some(point) = (0..d.k).find(|&p| degree[p] != t_i) {
        return Some(DesignViolation::ColumnWeight {
            point,
            weight: degree[point],
            expected: t_i,
        });
    }
    None
}

fn class_overlap(d: &Design) -> Option<DesignViolation> {
    let classes = d.classes.as_ref()?;
    for (ci, class) in classes.iter().enumerate() {
        for (x, &a) in class.iter().enumerate() {
            for &b in &class[x + 1..] {
                if let Some(&p) = d.lines[a].iter().find(|p| d.lines[b].contains(p)) {
                    return Some(DesignViolation::ClassOverlap {
                        class: ci,
                        lines: (a, b),
                        point: p,
                    });
                }
            }
        }
    }
    None
}

fn resolvability(d: &Design) -> Resolvability {
    let Some(classes) = &d.classes else {
        return Resolvability::Unclassified;
    };
    if class_overlap(d).is_some() {
        return Resolvability::NotDisjoint;
    }
    let covers_points = classes
        .iter()
        .all(|c| c.iter().map(|&j| d.lines[j].len()).sum::<usize>() == d.k);
    let mut used = vec![0; d.b()];
    for &j in classes.iter().flatten() {
        used[j] += 1;
    }
    if covers_points && used.iter().all(|&u| u == 1) {
        Resolvability::Partition
    } else {
        Resolvability::Disjoint
    }
}

/// Reads a design from a binary incidence matrix (rows are lines).
///
/// Weights must be uniform and the girth condition must hold. Parallel
/// classes are recovered greedily and kept only if they form a resolution.
pub fn load_design(m: &Matrix) -> Result<Design> {
    if let Some(&v) = m.data().iter().find(|&&v| v > 1) {
        return Err(Error::InvalidDesign(format!(
            "incidence entries must be 0/1, found {v}"
        )));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::InvalidDesign("empty incidence matrix".into()));
    }
    let lines: Vec<Vec<usize>> = (0..m.rows())
        .map(|j| (0..m.cols()).filter(|&p| m.get(j, p) == 1).collect())
        .collect();
    let r = lines[0].len();
    if let Some(j) = (0..lines.len()).find(|&j| lines[j].len() != r) {
        return Err(Error::InvalidDesign(format!(
            "non-uniform row weight: row {} has weight {}, row 1 has {r}",
            j + 1,
            lines[j].len()
        )));
    }
    let t_i = m.column(0).iter().filter(|&&v| v == 1).count();
    for p in 0..m.cols() {
        let w = m.column(p).iter().filter(|&&v| v == 1).count();
        if w != t_i {
            return Err(Error::InvalidDesign(format!(
                "non-uniform column weight: column {} has weight {w}, column 1 has {t_i}",
                p + 1
            )));
        }
    }
    let mut d = Design {
        k: m.cols(),
        r,
        t_i,
        lines,
        classes: None,
    };
    let check = validate_design(&d, t_i, r);
    if let Some(v) = check.violation {
        return Err(Error::InvalidDesign(v.to_string()));
    }
    let greedy = greedy_classes(&d);
    d.classes = Some(greedy);
    if resolvability(&d) != Resolvability::Partition || d.classes.as_ref().map(Vec::len) != Some(t_i) {
        d.classes = None;
    }
    Ok(d)
}

fn greedy_classes(d: &Design) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..d.b() {
        let slot = classes.iter().position(|c| {
            c.iter()
                .all(|&other| !d.lines[other].iter().any(|p| d.lines[j].contains(p)))
        });
        match slot {
            Some(c) => classes[c].push(j),
            None => classes.push(vec![j]),
        }
    }
    classes
}
