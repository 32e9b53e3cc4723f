use std::fmt;

/// Field species. Fermions are Grassmann-odd, ghosts are even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Psi,
    Beta,
}

/// Sign of the U(1) charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Charge {
    Plus,
    Minus,
}

impl Charge {
    pub fn flip(self) -> Charge {
        match self {
            Charge::Plus => Charge::Minus,
            Charge::Minus => Charge::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Charge::Plus => '+',
            Charge::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// Depends on `z` only.
    Holo,
    /// Depends on `z̄` only.
    Anti,
}

impl Chirality {
    pub fn flip(self) -> Chirality {
        match self {
            Chirality::Holo => Chirality::Anti,
            Chirality::Anti => Chirality::Holo,
        }
    }
}

/// A flavor index: either a concrete value `1..=n` or a named index. A name
/// occurring twice in a monomial is summed over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlavorIndex {
    Concrete(u32),
    Abstract(String),
}

impl FlavorIndex {
    pub fn name(&self) -> Option<&str> {
        match self {
            FlavorIndex::Abstract(s) => Some(s),
            FlavorIndex::Concrete(_) => None,
        }
    }
}

impl From<&str> for FlavorIndex {
    fn from(s: &str) -> Self {
        FlavorIndex::Abstract(s.to_string())
    }
}

impl From<u32> for FlavorIndex {
    fn from(v: u32) -> Self {
        FlavorIndex::Concrete(v)
    }
}

impl fmt::Display for FlavorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlavorIndex::Concrete(v) => write!(f, "{v}"),
            FlavorIndex::Abstract(s) => write!(f, "{s}"),
        }
    }
}

/// One occurrence of a free field, e.g. `∂²ψ₊ⁱ(z)`.
///
/// Field order is chirality, species, charge, derivative order, index; this is
/// the order canonical monomials are sorted by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSymbol {
    pub chirality: Chirality,
    pub species: Species,
    pub charge: Charge,
    pub deriv: u32,
    pub index: FlavorIndex,
}

impl FieldSymbol {
    pub fn new(chirality: Chirality, species: Species, charge: Charge, index: impl Into<FlavorIndex>) -> Self {
        FieldSymbol { chirality, species, charge, deriv: 0, index: index.into() }
    }

    pub fn psi(charge: Charge, index: impl Into<FlavorIndex>) -> Self {
        FieldSymbol::new(Chirality::Holo, Species::Psi, charge, index)
    }

    pub fn beta(charge: Charge, index: impl Into<FlavorIndex>) -> Self {
        FieldSymbol::new(Chirality::Holo, Species::Beta, charge, index)
    }

    pub fn with_deriv(mut self, deriv: u32) -> Self {
        self.deriv = deriv;
        self
    }

    pub fn is_odd(&self) -> bool {
        self.species == Species::Psi
    }

    pub fn mirror(&self) -> FieldSymbol {
        FieldSymbol { chirality: self.chirality.flip(), ..self.clone() }
    }
}

impl fmt::Display for FieldSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.species, self.chirality) {
            (Species::Psi, Chirality::Holo) => "psi",
            (Species::Psi, Chirality::Anti) => "psib",
            (Species::Beta, Chirality::Holo) => "beta",
            (Species::Beta, Chirality::Anti) => "betab",
        };
        let d = match self.chirality {
            Chirality::Holo => "d",
            Chirality::Anti => "db",
        };
        for _ in 0..self.deriv {
            write!(f, "{d}(")?;
        }
        write!(f, "{name}({},{})", self.charge.symbol(), self.index)?;
        for _ in 0..self.deriv {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Kronecker delta `δ(left, right)`; symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaFactor {
    pub left: FlavorIndex,
    pub right: FlavorIndex,
}

impl DeltaFactor {
    pub fn new(a: impl Into<FlavorIndex>, b: impl Into<FlavorIndex>) -> Self {
        DeltaFactor { left: a.into(), right: b.into() }
    }

    pub(crate) fn oriented(self) -> Self {
        if self.left <= self.right {
            self
        } else {
            DeltaFactor { left: self.right, right: self.left }
        }
    }
}

impl fmt::Display for DeltaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta({},{})", self.left, self.right)
    }
}
