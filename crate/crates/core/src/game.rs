//! Repeated-game payoff matrices and exact regime classification.
//!
//! The base game pays `R` for mutual cooperation, `S` to a cooperator facing
//! a defector, `T` to the defector in that pair and `P` for mutual defection.
//! It is a snowdrift game when `T > R > S > P`. Repeating it `m >= 2` times
//! against the same opponent with one of four reactive strategies gives the
//! 4x4 matrix `A` ([`RepeatedGame::payoff_matrix`]).
//!
//! Adding a constant to a column of `A` leaves the replicator flow unchanged,
//! so most of the analysis uses the reduced matrix `A'`
//! ([`RepeatedGame::reduced_matrix`]) obtained by subtracting `mR` from
//! columns 1-2 and `mP` from columns 3-4. Its diagonal 2x2 blocks vanish.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rational::{halves, int, to_f64, Rational};

/// One of the four reactive strategies, in matrix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    AllC,
    Tft,
    Stft,
    AllD,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::AllC, Strategy::Tft, Strategy::Stft, Strategy::AllD];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(p, q, r)`: cooperate in round one, after the opponent cooperated,
    /// after the opponent defected.
    pub fn reactive(self) -> (bool, bool, bool) {
        match self {
            Strategy::AllC => (true, true, true),
            Strategy::Tft => (true, true, false),
            Strategy::Stft => (false, true, false),
            Strategy::AllD => (false, false, false),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::AllC => "ALLC",
            Strategy::Tft => "TFT",
            Strategy::Stft => "STFT",
            Strategy::AllD => "ALLD",
        }
    }

    fn first_move(self) -> bool {
        self.reactive().0
    }

    fn reply(self, opponent_cooperated: bool) -> bool {
        let (_, q, r) = self.reactive();
        if opponent_cooperated {
            q
        } else {
            r
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Checks the snowdrift ordering `T > R > S > P`, naming the first failure.
pub fn validate_snowdrift(t: &Rational, r: &Rational, s: &Rational, p: &Rational) -> Result<(), Error> {
    if t <= r {
        return Err(Error::NotSnowdrift("T > R"));
    }
    if r <= s {
        return Err(Error::NotSnowdrift("R > S"));
    }
    if s <= p {
        return Err(Error::NotSnowdrift("S > P"));
    }
    Ok(())
}

/// Base-game payoffs `T, R, S, P` satisfying `T > R > S > P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePayoffs {
    temptation: Rational,
    reward: Rational,
    sucker: Rational,
    punishment: Rational,
}

impl BasePayoffs {
    pub fn new(temptation: Rational, reward: Rational, sucker: Rational, punishment: Rational) -> Result<Self, Error> {
        validate_snowdrift(&temptation, &reward, &sucker, &punishment)?;
        Ok(Self {
            temptation,
            reward,
            sucker,
            punishment,
        })
    }

    /// Integer payoffs, mostly for tests and examples.
    pub fn from_ints(t: i64, r: i64, s: i64, p: i64) -> Result<Self, Error> {
        Self::new(int(t), int(r), int(s), int(p))
    }

    pub fn temptation(&self) -> &Rational {
        &self.temptation
    }

    pub fn reward(&self) -> &Rational {
        &self.reward
    }

    pub fn sucker(&self) -> &Rational {
        &self.sucker
    }

    pub fn punishment(&self) -> &Rational {
        &self.punishment
    }

    /// Payoff of one round to a player who chose `mine` against `theirs`
    /// (`true` = cooperate).
    pub fn round_payoff(&self, mine: bool, theirs: bool) -> &Rational {
        match (mine, theirs) {
            (true, true) => &self.reward,
            (true, false) => &self.sucker,
            (false, true) => &self.temptation,
            (false, false) => &self.punishment,
        }
    }
}

/// Parity of the number of rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// 4x4 exact matrix in strategy order.
pub type Entries = [[Rational; 4]; 4];

/// Float copy of a 4x4 matrix, used by the integrator.
pub type FloatMatrix = [[f64; 4]; 4];

fn entries_to_f64(e: &Entries) -> FloatMatrix {
    let mut out = [[0.0; 4]; 4];
    for (row, src) in out.iter_mut().zip(e) {
        for (v, q) in row.iter_mut().zip(src) {
            *v = to_f64(q);
        }
    }
    out
}

/// Payoff matrix of a symmetric 4-strategy game, row player's payoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    entries: Entries,
}

impl PayoffMatrix {
    pub fn new(entries: Entries) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn to_f64(&self) -> FloatMatrix {
        entries_to_f64(&self.entries)
    }

    /// Adds `c` to every entry of column `col`.
    pub fn shift_column(&self, col: usize, c: &Rational) -> Result<PayoffMatrix, Error> {
        if col >= 4 {
            return Err(Error::BadIndex(col));
        }
        let mut entries = self.entries.clone();
        for row in entries.iter_mut() {
            row[col] += c;
        }
        Ok(PayoffMatrix { entries })
    }
}

/// The column-shifted matrix `A'` with zero diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMatrix {
    entries: Entries,
}

impl ReducedMatrix {
    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn to_f64(&self) -> FloatMatrix {
        entries_to_f64(&self.entries)
    }

    pub fn as_payoff_matrix(&self) -> PayoffMatrix {
        PayoffMatrix::new(self.entries.clone())
    }
}

/// The four reward levels at which the structure of `A'` changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    /// `(T + (m-1)P) / m`; `a'42 = 0` here.
    pub defection: Rational,
    /// `(T + S) / 2`.
    pub midpoint: Rational,
    /// `(ceil(m/2) T + floor(m/2) S) / m`; `a'32 = 0` here.
    pub alternation: Rational,
    /// `(ceil((m-2)/2) S + floor(m/2) T) / (m-1)`; `a'13 = a'23` here.
    pub indifference: Rational,
}

impl Thresholds {
    /// Lower bound of the large-reward regime.
    pub fn upper(&self) -> &Rational {
        if self.alternation >= self.indifference {
            &self.alternation
        } else {
            &self.indifference
        }
    }
}

/// A threshold that `R` hits exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Threshold {
    Defection,
    Midpoint,
    Alternation,
    Indifference,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Threshold::Defection => "R=(T+(m-1)P)/m",
            Threshold::Midpoint => "R=(T+S)/2",
            Threshold::Alternation => "R=(ceil(m/2)T+floor(m/2)S)/m",
            Threshold::Indifference => "R=(ceil((m-2)/2)S+floor(m/2)T)/(m-1)",
        })
    }
}

/// Magnitude tag of an entry of `A'` relative to its column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignTag {
    /// Largest positive entry of the column.
    PlusPlus,
    Plus,
    Zero,
    Minus,
    /// Smallest of two negative entries of the column.
    MinusMinus,
}

impl SignTag {
    pub fn symbol(self) -> &'static str {
        match self {
            SignTag::PlusPlus => "++",
            SignTag::Plus => "+",
            SignTag::Zero => "0",
            SignTag::Minus => "-",
            SignTag::MinusMinus => "--",
        }
    }
}

impl fmt::Display for SignTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Sign pattern of `A'` and which of the seven reward bands produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignStructure {
    pub case_id: u8,
    pub tags: [[SignTag; 4]; 4],
}

/// Tags every entry of `a` by comparison within its column.
pub fn column_tags(a: &Entries) -> [[SignTag; 4]; 4] {
    let mut tags = [[SignTag::Zero; 4]; 4];
    for col in 0..4 {
        let column: [&Rational; 4] = [&a[0][col], &a[1][col], &a[2][col], &a[3][col]];
        let max_pos = column.iter().filter(|v| v.is_positive()).max().copied();
        let negatives = column.iter().filter(|v| v.is_negative()).count();
        let min_neg = column.iter().filter(|v| v.is_negative()).min().copied();
        for row in 0..4 {
            let v = column[row];
            tags[row][col] = if v.is_zero() {
                SignTag::Zero
            } else if v.is_positive() {
                if Some(v) == max_pos {
                    SignTag::PlusPlus
                } else {
                    SignTag::Plus
                }
            } else if negatives > 1 && Some(v) == min_neg {
                SignTag::MinusMinus
            } else {
                SignTag::Minus
            };
        }
    }
    tags
}

/// Boundary-equilibrium case, sign case and interior convergence regime for
/// one game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeClass {
    /// Band of `R` that fixes the sign pattern of `A'`, 1..=7.
    pub sign_case: u8,
    /// Which boundary equilibrium set applies, 1..=5.
    pub equilibrium_case: u8,
    pub interior: InteriorRegime,
    pub parity: Parity,
    /// Thresholds that `R` equals exactly.
    pub equalities: Vec<Threshold>,
}

/// Limit-set regime for trajectories starting in the interior of the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteriorRegime {
    /// `S < R < (T+S)/2`: `x14` and `x23` are both attractors, separated by
    /// the stable manifold of the interior saddle.
    Bistable,
    /// `m` even and `(T+S)/2 <= R <= (nT+(n-1)S)/(2n-1)`, sub-case 1..=3.
    EvenIntermediate(u8),
    /// `m` odd and `(T+S)/2 <= R <= ((n+1)T+nS)/(2n+1)`, sub-case 1..=2.
    OddIntermediate(u8),
    /// `R` above both structural thresholds.
    LargeReward,
}

impl fmt::Display for InteriorRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InteriorRegime::Bistable => f.write_str("bistable"),
            InteriorRegime::EvenIntermediate(c) => write!(f, "even-intermediate/{c}"),
            InteriorRegime::OddIntermediate(c) => write!(f, "odd-intermediate/{c}"),
            InteriorRegime::LargeReward => f.write_str("large-reward"),
        }
    }
}

/// Cooperative moves (both players summed) over `m` rounds for every pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoopCounts {
    counts: [[u32; 4]; 4],
    rounds: u32,
}

impl CoopCounts {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[i][j]
    }

    pub fn counts(&self) -> &[[u32; 4]; 4] {
        &self.counts
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }
}

/// Plays `a` against `b` for `rounds` rounds; returns each side's moves.
pub fn play_match(a: Strategy, b: Strategy, rounds: u32) -> Vec<(bool, bool)> {
    let mut moves = Vec::with_capacity(rounds as usize);
    let (mut ma, mut mb) = (a.first_move(), b.first_move());
    for _ in 0..rounds {
        moves.push((ma, mb));
        let next_a = a.reply(mb);
        let next_b = b.reply(ma);
        ma = next_a;
        mb = next_b;
    }
    moves
}

/// Traces both automata of every pairing for `rounds` rounds.
pub fn cooperation_counts(rounds: u32) -> Result<CoopCounts, Error> {
    if rounds < 2 {
        return Err(Error::TooFewRounds(rounds));
    }
    let mut counts = [[0u32; 4]; 4];
    for a in Strategy::ALL {
        for b in Strategy::ALL {
            counts[a.index()][b.index()] = play_match(a, b, rounds)
                .iter()
                .map(|&(x, y)| x as u32 + y as u32)
                .sum();
        }
    }
    Ok(CoopCounts { counts, rounds })
}

/// The repeated game `G^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedGame {
    payoffs: BasePayoffs,
    rounds: u32,
}

impl RepeatedGame {
    pub fn new(payoffs: BasePayoffs, rounds: u32) -> Result<Self, Error> {
        if rounds < 2 {
            return Err(Error::TooFewRounds(rounds));
        }
        Ok(Self { payoffs, rounds })
    }

    pub fn payoffs(&self) -> &BasePayoffs {
        &self.payoffs
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn parity(&self) -> Parity {
        if self.rounds.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Accumulated payoffs over `m` rounds, row strategy against column.
    pub fn payoff_matrix(&self) -> PayoffMatrix {
        let BasePayoffs {
            temptation: t,
            reward: r,
            sucker: s,
            punishment: p,
        } = &self.payoffs;
        let m = int(self.rounds as i64);
        let m1 = int(self.rounds as i64 - 1);
        let (hi, lo) = halves(self.rounds);
        let (hi, lo) = (int(hi as i64), int(lo as i64));

        let mr = &m * r;
        let mp = &m * p;
        PayoffMatrix::new([
            [mr.clone(), mr.clone(), s + &m1 * r, &m * s],
            [mr.clone(), mr, &hi * s + &lo * t, s + &m1 * p],
            [t + &m1 * r, &hi * t + &lo * s, mp.clone(), mp.clone()],
            [&m * t, t + &m1 * p, mp.clone(), mp],
        ])
    }

    /// `A'`: `mR` subtracted from columns 1-2 and `mP` from columns 3-4.
    pub fn reduced_matrix(&self) -> ReducedMatrix {
        let a = self.payoff_matrix();
        let m = int(self.rounds as i64);
        let col_shift = [
            -(&m * self.payoffs.reward()),
            -(&m * self.payoffs.reward()),
            -(&m * self.payoffs.punishment()),
            -(&m * self.payoffs.punishment()),
        ];
        let mut shifted = a;
        for (col, c) in col_shift.iter().enumerate() {
            shifted = shifted.shift_column(col, c).expect("column index in range");
        }
        ReducedMatrix {
            entries: shifted.entries,
        }
    }

    pub fn thresholds(&self) -> Thresholds {
        let BasePayoffs {
            temptation: t,
            sucker: s,
            punishment: p,
            ..
        } = &self.payoffs;
        let m = self.rounds as i64;
        let (hi, lo) = halves(self.rounds);
        // ceil((m-2)/2) = ceil(m/2) - 1 for m >= 2
        let hi_less = int(hi as i64 - 1);
        Thresholds {
            defection: (t + int(m - 1) * p) / int(m),
            midpoint: (t + s) / int(2),
            alternation: (int(hi as i64) * t + int(lo as i64) * s) / int(m),
            indifference: (&hi_less * s + int(lo as i64) * t) / int(m - 1),
        }
    }

    /// Band of `R` fixing the sign pattern of `A'`, and the per-entry tags.
    pub fn sign_structure(&self) -> SignStructure {
        let th = self.thresholds();
        let r = self.payoffs.reward();
        let case_id = if r < &th.defection {
            1
        } else if r < &th.midpoint {
            2
        } else {
            match self.parity() {
                Parity::Odd => {
                    if r == &th.midpoint {
                        3
                    } else if r <= &th.alternation {
                        4
                    } else {
                        7
                    }
                }
                Parity::Even => match r.cmp(&th.indifference) {
                    Ordering::Less => 5,
                    Ordering::Equal => 6,
                    Ordering::Greater => 7,
                },
            }
        };
        SignStructure {
            case_id,
            tags: column_tags(self.reduced_matrix().entries()),
        }
    }

    /// Equilibrium case, interior regime and exact threshold hits.
    pub fn classify(&self) -> RegimeClass {
        let th = self.thresholds();
        let r = self.payoffs.reward();
        let parity = self.parity();

        let equilibrium_case = if r < &th.defection {
            1
        } else if r < &th.midpoint {
            2
        } else {
            match parity {
                Parity::Odd if r == &th.midpoint => 3,
                Parity::Odd if r < &th.alternation => 2,
                // R at or above the odd upper bound: x23 has merged into p2.
                Parity::Odd => 5,
                Parity::Even if r == &th.indifference => 4,
                Parity::Even => 5,
            }
        };

        let interior = if r < &th.midpoint {
            InteriorRegime::Bistable
        } else {
            match parity {
                Parity::Even => {
                    if r == &th.midpoint {
                        InteriorRegime::EvenIntermediate(1)
                    } else if r < &th.indifference {
                        InteriorRegime::EvenIntermediate(2)
                    } else if r == &th.indifference {
                        InteriorRegime::EvenIntermediate(3)
                    } else {
                        InteriorRegime::LargeReward
                    }
                }
                Parity::Odd => {
                    if r == &th.midpoint {
                        InteriorRegime::OddIntermediate(1)
                    } else if r <= &th.alternation {
                        InteriorRegime::OddIntermediate(2)
                    } else {
                        InteriorRegime::LargeReward
                    }
                }
            }
        };

        let mut equalities = Vec::new();
        for (which, value) in [
            (Threshold::Defection, &th.defection),
            (Threshold::Midpoint, &th.midpoint),
            (Threshold::Alternation, &th.alternation),
            (Threshold::Indifference, &th.indifference),
        ] {
            if r == value {
                equalities.push(which);
            }
        }

        RegimeClass {
            sign_case: self.sign_structure().case_id,
            equilibrium_case,
            interior,
            parity,
            equalities,
        }
    }

    pub fn cooperation_counts(&self) -> CoopCounts {
        cooperation_counts(self.rounds).expect("rounds validated at construction")
    }
}
