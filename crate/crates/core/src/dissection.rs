//! Rearrangement fallacies decided in exact rational arithmetic: the
//! "missing square" 13×5 triangle and the 8×8 → 13×5 "64 = 65" puzzle,
//! with its Fibonacci generalization.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::closedform::{format_rational, integer, Rational};
use crate::error::{Error, Result};
use crate::geometry::{collinear, cross, interior_disjoint, shoelace_area_exact, Point};

pub type RationalPoint = Point<Rational>;

pub const MIN_FIBONACCI_K: u32 = 3;
pub const MAX_FIBONACCI_K: u32 = 40;

fn rp(x: i64, y: i64) -> RationalPoint {
    Point::new(integer(x), integer(y))
}

fn big_point(x: &BigInt, y: &BigInt) -> RationalPoint {
    Point::new(Rational::from_integer(x.clone()), Rational::from_integer(y.clone()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub label: String,
    pub polygon: Vec<RationalPoint>,
}

/// Outline a set of pieces is claimed to fill.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub polygon: Vec<RationalPoint>,
    pub claimed_area: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PieceSet {
    pub name: String,
    pub pieces: Vec<Piece>,
    pub frame: Frame,
}

impl PieceSet {
    fn new(name: &str, pieces: Vec<(&str, Vec<RationalPoint>)>, frame: Vec<RationalPoint>) -> Self {
        let claimed_area = shoelace_area_exact(&frame)
            .map(|a| a.area)
            .unwrap_or_else(|_| Rational::zero());
        PieceSet {
            name: name.to_string(),
            pieces: pieces
                .into_iter()
                .map(|(label, polygon)| Piece {
                    label: label.to_string(),
                    polygon,
                })
                .collect(),
            frame: Frame {
                polygon: frame,
                claimed_area,
            },
        }
    }

    pub fn piece(&self, label: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.label == label)
    }

    /// Each piece simple and pieces pairwise interior-disjoint.
    pub fn validate(&self) -> Result<()> {
        for piece in &self.pieces {
            shoelace_area_exact(&piece.polygon).map_err(|e| Error::InvalidPiece {
                label: piece.label.clone(),
                source: Box::new(e),
            })?;
        }
        for (i, a) in self.pieces.iter().enumerate() {
            for b in &self.pieces[i + 1..] {
                if !interior_disjoint(&a.polygon, &b.polygon) {
                    return Err(Error::OverlappingPieces(a.label.clone(), b.label.clone()));
                }
            }
        }
        Ok(())
    }
}

fn point_json(p: &RationalPoint) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

impl Serialize for PieceSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct PieceRepr {
            label: String,
            polygon: Vec<[String; 2]>,
            area: String,
        }
        let pieces: Vec<PieceRepr> = self
            .pieces
            .iter()
            .map(|p| PieceRepr {
                label: p.label.clone(),
                polygon: p.polygon.iter().map(point_json).collect(),
                area: shoelace_area_exact(&p.polygon)
                    .map(|a| format_rational(&a.area))
                    .unwrap_or_default(),
            })
            .collect();
        let frame: Vec<[String; 2]> = self.frame.polygon.iter().map(point_json).collect();
        let mut s = serializer.serialize_struct("PieceSet", 4)?;
        s.serialize_field("name", &self.name)?;
        s.serialize_field("pieces", &pieces)?;
        s.serialize_field("frame", &frame)?;
        s.serialize_field("claimed_area", &format_rational(&self.frame.claimed_area))?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Accounting {
    pub piece_sum: Rational,
    pub frame_area: Rational,
    /// `frame_area − piece_sum`.
    pub gap: Rational,
}

pub fn verify_piece_accounting(ps: &PieceSet) -> Result<Accounting> {
    ps.validate()?;
    let piece_sum = ps
        .pieces
        .iter()
        .map(|p| shoelace_area_exact(&p.polygon).map(|a| a.area))
        .sum::<Result<Rational>>()?;
    let frame_area = ps.frame.claimed_area.clone();
    Ok(Accounting {
        gap: &frame_area - &piece_sum,
        piece_sum,
        frame_area,
    })
}

/// Slope of the segment `pq` (non-vertical).
pub fn slope(p: &RationalPoint, q: &RationalPoint) -> Rational {
    (&q.y - &p.y) / (&q.x - &p.x)
}

/// The 13×5 "triangle" built from an 8×3 triangle, a 5×2 triangle and two
/// L-shaped pieces of areas 8 and 7, in both arrangements.
pub fn missing_square_arrangements() -> (PieceSet, PieceSet) {
    let frame = || vec![rp(0, 0), rp(13, 0), rp(13, 5)];
    let first = PieceSet::new(
        "missing-square/first",
        vec![
            ("red", vec![rp(0, 0), rp(8, 0), rp(8, 3)]),
            ("green", vec![rp(8, 3), rp(13, 3), rp(13, 5)]),
            ("orange", vec![rp(8, 0), rp(13, 0), rp(13, 1), rp(11, 1), rp(11, 2), rp(8, 2)]),
            ("yellow", vec![rp(11, 1), rp(13, 1), rp(13, 3), rp(8, 3), rp(8, 2), rp(11, 2)]),
        ],
        frame(),
    );
    let second = PieceSet::new(
        "missing-square/second",
        vec![
            ("red", vec![rp(5, 2), rp(13, 2), rp(13, 5)]),
            ("green", vec![rp(0, 0), rp(5, 0), rp(5, 2)]),
            ("orange", vec![rp(5, 0), rp(10, 0), rp(10, 1), rp(8, 1), rp(8, 2), rp(5, 2)]),
            ("yellow", vec![rp(11, 0), rp(13, 0), rp(13, 2), rp(8, 2), rp(8, 1), rp(11, 1)]),
        ],
        frame(),
    );
    (first, second)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MissingSquare {
    pub colored_area: Rational,
    pub claimed_area: Rational,
    /// Area of the thin parallelogram between the two hypotenuse paths.
    pub sliver_area: Rational,
    pub red_slope: Rational,
    pub green_slope: Rational,
    pub collinear: bool,
    pub first: Accounting,
    pub second: Accounting,
}

pub fn missing_square_case() -> Result<MissingSquare> {
    let (first, second) = missing_square_arrangements();
    let acc_first = verify_piece_accounting(&first)?;
    let acc_second = verify_piece_accounting(&second)?;
    let red = &first.piece("red").expect("red piece").polygon;
    let green = &first.piece("green").expect("green piece").polygon;
    let sliver = shoelace_area_exact(&[rp(0, 0), rp(8, 3), rp(13, 5), rp(5, 2)])?.area;
    Ok(MissingSquare {
        colored_area: acc_first.piece_sum.clone(),
        claimed_area: acc_first.frame_area.clone(),
        sliver_area: sliver,
        red_slope: slope(&red[0], &red[2]),
        green_slope: slope(&green[0], &green[2]),
        collinear: collinear(&rp(0, 0), &rp(8, 3), &rp(13, 5)),
        first: acc_first,
        second: acc_second,
    })
}

/// `F(0) = 0, F(1) = 1`.
pub fn fibonacci(k: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::from(1));
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn check_k(k: u32) -> Result<()> {
    if !(MIN_FIBONACCI_K..=MAX_FIBONACCI_K).contains(&k) {
        return Err(Error::param("k", "3 <= k <= 40", k));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FibonacciDissection {
    pub k: u32,
    /// `F(k)²`.
    pub square_area: Rational,
    /// `F(k−1)·F(k+1)`.
    pub rectangle_area: Rational,
    /// `|F(k−1)F(k+1) − F(k)²|`.
    pub discrepancy: Rational,
    /// Sign of `F(k−1)F(k+1) − F(k)²`: the rectangle gains area for even `k`.
    pub rectangle_gains: bool,
}

pub fn fibonacci_dissection(k: u32) -> Result<FibonacciDissection> {
    check_k(k)?;
    let (prev, cur, next) = (fibonacci(k - 1), fibonacci(k), fibonacci(k + 1));
    let square = Rational::from_integer(&cur * &cur);
    let rect = Rational::from_integer(&prev * &next);
    let diff = &rect - &square;
    Ok(FibonacciDissection {
        k,
        square_area: square,
        rectangle_area: rect,
        rectangle_gains: diff.is_positive(),
        discrepancy: diff.abs(),
    })
}

/// The square of side `F(k)` cut into two right triangles (legs `F(k)`,
/// `F(k−2)`) and two right trapezoids (parallel sides `F(k−1)`, `F(k−2)`,
/// height `F(k−1)`), and the same pieces laid out in the `F(k+1) × F(k−1)`
/// rectangle. For odd `k` the rectangle layout overlaps.
pub fn fibonacci_piece_sets(k: u32) -> Result<(PieceSet, PieceSet)> {
    check_k(k)?;
    let a = fibonacci(k - 2);
    let b = fibonacci(k - 1);
    let s = fibonacci(k);
    let l = fibonacci(k + 1);
    let z = BigInt::zero();
    let p = big_point;
    let square = PieceSet::new(
        &format!("fibonacci-{k}/square"),
        vec![
            ("triangle-1", vec![p(&z, &z), p(&s, &z), p(&s, &a)]),
            ("triangle-2", vec![p(&z, &z), p(&s, &a), p(&z, &a)]),
            ("trapezoid-1", vec![p(&z, &a), p(&b, &a), p(&a, &s), p(&z, &s)]),
            ("trapezoid-2", vec![p(&b, &a), p(&s, &a), p(&s, &s), p(&a, &s)]),
        ],
        vec![p(&z, &z), p(&s, &z), p(&s, &s), p(&z, &s)],
    );
    let rise = &b - &a;
    let rectangle = PieceSet::new(
        &format!("fibonacci-{k}/rectangle"),
        vec![
            ("triangle-1", vec![p(&z, &z), p(&s, &z), p(&s, &a)]),
            ("triangle-2", vec![p(&l, &b), p(&b, &b), p(&b, &rise)]),
            ("trapezoid-1", vec![p(&s, &z), p(&l, &z), p(&l, &b), p(&s, &a)]),
            ("trapezoid-2", vec![p(&z, &z), p(&b, &rise), p(&b, &b), p(&z, &b)]),
        ],
        vec![p(&z, &z), p(&l, &z), p(&l, &b), p(&z, &b)],
    );
    Ok((square, rectangle))
}

/// The classic 8×8 → 13×5 puzzle.
pub fn sixty_four_sixty_five() -> (PieceSet, PieceSet) {
    fibonacci_piece_sets(6).expect("k = 6 is in range")
}

/// Exact cross product of the two hypotenuse directions of the rectangle
/// layout: `±1` whenever the layout is a Fibonacci one.
pub fn hypotenuse_cross(k: u32) -> Result<Rational> {
    check_k(k)?;
    let (a, s) = (fibonacci(k - 2), fibonacci(k));
    let (b, l) = (fibonacci(k - 1), fibonacci(k + 1));
    let z = BigInt::zero();
    Ok(cross(&big_point(&z, &z), &big_point(&s, &a), &big_point(&l, &b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::rational;

    #[test]
    fn missing_square_numbers() {
        let m = missing_square_case().unwrap();
        assert_eq!(m.colored_area, integer(32));
        assert_eq!(m.claimed_area, rational(65, 2));
        assert_eq!(m.sliver_area, integer(1));
        assert_eq!(m.red_slope, rational(3, 8));
        assert_eq!(m.green_slope, rational(2, 5));
        assert!(!m.collinear);
        assert_eq!(m.first.gap, rational(1, 2));
        assert_eq!(m.second.gap, rational(1, 2));
        assert_eq!(m.second.piece_sum, integer(32));
    }

    #[test]
    fn missing_square_piece_areas() {
        let (first, _) = missing_square_arrangements();
        let area = |l: &str| shoelace_area_exact(&first.piece(l).unwrap().polygon).unwrap().area;
        assert_eq!(area("red"), integer(12));
        assert_eq!(area("green"), integer(5));
        assert_eq!(area("orange"), integer(8));
        assert_eq!(area("yellow"), integer(7));
    }

    #[test]
    fn missing_square_pieces_move_by_translation() {
        let (first, second) = missing_square_arrangements();
        for piece in &first.pieces {
            let moved = second.piece(&piece.label).unwrap();
            let dx = &moved.polygon[0].x - &piece.polygon[0].x;
            let dy = &moved.polygon[0].y - &piece.polygon[0].y;
            for (p, q) in piece.polygon.iter().zip(&moved.polygon) {
                assert_eq!(&q.x - &p.x, dx, "{}", piece.label);
                assert_eq!(&q.y - &p.y, dy, "{}", piece.label);
            }
        }
    }

    #[test]
    fn second_arrangement_leaves_one_uncovered_cell() {
        use crate::geometry::{point_in_polygon, Location};
        let (_, second) = missing_square_arrangements();
        let hole = Point::new(rational(21, 2), rational(1, 2));
        for piece in &second.pieces {
            assert_eq!(point_in_polygon(&hole, &piece.polygon), Location::Outside);
        }
    }

    #[test]
    fn sixty_four_equals_sixty_five() {
        let (square, rect) = sixty_four_sixty_five();
        let sq = verify_piece_accounting(&square).unwrap();
        assert_eq!(sq.piece_sum, integer(64));
        assert_eq!(sq.gap, integer(0));
        let re = verify_piece_accounting(&rect).unwrap();
        assert_eq!(re.frame_area, integer(65));
        assert_eq!(re.gap, integer(1));
    }

    #[test]
    fn rectangle_pieces_are_congruent_to_square_pieces() {
        fn edge_lengths(poly: &[RationalPoint]) -> Vec<Rational> {
            let n = poly.len();
            let mut v: Vec<Rational> = (0..n)
                .map(|i| {
                    let (p, q) = (&poly[i], &poly[(i + 1) % n]);
                    let dx = &q.x - &p.x;
                    let dy = &q.y - &p.y;
                    &dx * &dx + &dy * &dy
                })
                .collect();
            v.sort();
            v
        }
        for k in [4, 6, 8, 10] {
            let (square, rect) = fibonacci_piece_sets(k).unwrap();
            for piece in &square.pieces {
                let other = rect.piece(&piece.label).unwrap();
                assert_eq!(edge_lengths(&piece.polygon), edge_lengths(&other.polygon));
                assert_eq!(
                    shoelace_area_exact(&piece.polygon).unwrap().area,
                    shoelace_area_exact(&other.polygon).unwrap().area
                );
            }
        }
    }

    #[test]
    fn fibonacci_examples() {
        let f6 = fibonacci_dissection(6).unwrap();
        assert_eq!((f6.square_area.clone(), f6.rectangle_area.clone()), (integer(64), integer(65)));
        assert_eq!(f6.discrepancy, integer(1));
        assert!(f6.rectangle_gains);
        let f5 = fibonacci_dissection(5).unwrap();
        assert_eq!((f5.square_area.clone(), f5.rectangle_area.clone()), (integer(25), integer(24)));
        assert_eq!(f5.discrepancy, integer(1));
        let f3 = fibonacci_dissection(3).unwrap();
        assert_eq!((f3.square_area.clone(), f3.rectangle_area.clone()), (integer(4), integer(3)));
        assert_eq!(f3.discrepancy, integer(1));
        assert!(fibonacci_dissection(2).is_err());
        assert!(fibonacci_dissection(41).is_err());
    }

    #[test]
    fn cassini_holds_through_forty() {
        for k in 3..=40 {
            let d = fibonacci_dissection(k).unwrap();
            assert_eq!(d.discrepancy, integer(1), "k={k}");
            assert_eq!(d.rectangle_gains, k % 2 == 0);
            assert_eq!(hypotenuse_cross(k).unwrap().abs(), integer(1));
        }
    }

    #[test]
    fn even_layouts_gain_a_unit_and_odd_layouts_overlap() {
        for k in 3..=12 {
            let (square, rect) = fibonacci_piece_sets(k).unwrap();
            assert_eq!(verify_piece_accounting(&square).unwrap().gap, integer(0));
            if k % 2 == 0 {
                assert_eq!(verify_piece_accounting(&rect).unwrap().gap, integer(1), "k={k}");
            } else {
                assert!(matches!(
                    verify_piece_accounting(&rect),
                    Err(Error::OverlappingPieces(..))
                ));
            }
        }
    }

    #[test]
    fn invalid_piece_is_named() {
        let mut ps = sixty_four_sixty_five().0;
        ps.pieces[2].polygon = vec![rp(0, 0), rp(2, 2), rp(2, 0), rp(0, 2)];
        match verify_piece_accounting(&ps) {
            Err(Error::InvalidPiece { label, .. }) => assert_eq!(label, "trapezoid-1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), BigInt::zero());
        assert_eq!(fibonacci(1), BigInt::from(1));
        assert_eq!(fibonacci(13), BigInt::from(233));
        assert_eq!(fibonacci(41), BigInt::from(165_580_141u64));
    }
}
