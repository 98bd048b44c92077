//! Three-valued, strength-annotated signal lattice and the conduction and
//! pass rules of a dual-gate ambipolar FET.
//!
//! The polarity gate (PG) selects the carrier type and the control gate (CG)
//! switches the channel. With the convention `PG = 1 => n-type`, a single
//! device conducts exactly when `CG XNOR PG` holds.

use std::cmp::Ordering;
use std::fmt;

/// A logic level carried by a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    L0,
    L1,
    LX,
}

impl Level {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Level::L1
        } else {
            Level::L0
        }
    }

    /// `Some(bool)` for defined levels.
    pub fn to_bool(self) -> Option<bool> {
        match self {
            Level::L0 => Some(false),
            Level::L1 => Some(true),
            Level::LX => None,
        }
    }

    pub fn is_defined(self) -> bool {
        self != Level::LX
    }

    /// Least upper bound: equal levels survive, anything else is unknown.
    pub fn merge(self, other: Level) -> Level {
        if self == other {
            self
        } else {
            Level::LX
        }
    }

    pub fn invert(self) -> Level {
        match self {
            Level::L0 => Level::L1,
            Level::L1 => Level::L0,
            Level::LX => Level::LX,
        }
    }

    /// Character used by the netlist and trace formats.
    pub fn as_char(self) -> char {
        match self {
            Level::L0 => '0',
            Level::L1 => '1',
            Level::LX => 'x',
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Drive strength. `Weak` is a level that went through a threshold drop,
/// `Charged` is retained charge on an undriven node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Floating = 0,
    Charged = 1,
    Weak = 2,
    Strong = 3,
}

impl Strength {
    pub const ALL: [Strength; 4] = [
        Strength::Floating,
        Strength::Charged,
        Strength::Weak,
        Strength::Strong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
            Strength::Charged => "charged",
            Strength::Floating => "floating",
        }
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A (level, strength) pair. A floating signal always has level `LX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signal {
    level: Level,
    strength: Strength,
}

impl Signal {
    pub const FLOATING: Signal = Signal {
        level: Level::LX,
        strength: Strength::Floating,
    };

    /// Builds a signal, normalizing a floating one to `LX`.
    pub fn new(level: Level, strength: Strength) -> Self {
        let level = if strength == Strength::Floating {
            Level::LX
        } else {
            level
        };
        Signal { level, strength }
    }

    pub fn strong(level: Level) -> Self {
        Signal::new(level, Strength::Strong)
    }

    pub fn weak(level: Level) -> Self {
        Signal::new(level, Strength::Weak)
    }

    pub fn charged(level: Level) -> Self {
        Signal::new(level, Strength::Charged)
    }

    pub fn level(self) -> Level {
        self.level
    }

    pub fn strength(self) -> Strength {
        self.strength
    }

    /// Two-driver resolution: the stronger signal wins, ties merge levels.
    pub fn resolve_with(self, other: Signal) -> Signal {
        match self.strength.cmp(&other.strength) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => Signal::new(self.level.merge(other.level), self.strength),
        }
    }
}

impl Default for Signal {
    fn default() -> Self {
        Signal::FLOATING
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.strength)
    }
}

/// Resolves any number of driver contributions. Empty input is floating.
pub fn resolve<I>(contributions: I) -> Signal
where
    I: IntoIterator<Item = Signal>,
{
    contributions
        .into_iter()
        .fold(Signal::FLOATING, Signal::resolve_with)
}

/// Channel carrier type as selected by the polarity gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    NType,
    PType,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conduction {
    On,
    Off,
    Maybe,
}

pub fn channel_polarity(pg: Level) -> Polarity {
    match pg {
        Level::L1 => Polarity::NType,
        Level::L0 => Polarity::PType,
        Level::LX => Polarity::Unknown,
    }
}

pub fn conduction(polarity: Polarity, cg: Level) -> Conduction {
    match (polarity, cg) {
        (Polarity::NType, Level::L1) | (Polarity::PType, Level::L0) => Conduction::On,
        (Polarity::NType, Level::L0) | (Polarity::PType, Level::L1) => Conduction::Off,
        _ => Conduction::Maybe,
    }
}

/// Conduction of a device given the levels on its two gates.
pub fn device_conduction(cg: Level, pg: Level) -> Conduction {
    conduction(channel_polarity(pg), cg)
}

/// Strength ceiling for a level passed through a channel of the given
/// polarity. An n-channel degrades a `1`, a p-channel degrades a `0`.
pub fn pass_cap(polarity: Polarity, level: Level) -> Strength {
    match (polarity, level) {
        (Polarity::NType, Level::L0) | (Polarity::PType, Level::L1) => Strength::Strong,
        _ => Strength::Weak,
    }
}

/// Signal seen at the far terminal of a conducting channel.
pub fn pass(polarity: Polarity, input: Signal) -> Signal {
    let cap = pass_cap(polarity, input.level);
    Signal::new(input.level, input.strength.min(cap))
}

/// Like [`pass`], but accounts for conduction: `Off` passes nothing and
/// `Maybe` forces the passed level to unknown.
pub fn transmit(polarity: Polarity, conduction: Conduction, input: Signal) -> Option<Signal> {
    match conduction {
        Conduction::Off => None,
        Conduction::On => Some(pass(polarity, input)),
        Conduction::Maybe => {
            let passed = pass(polarity, input);
            Some(Signal::new(Level::LX, passed.strength))
        }
    }
}
