//! Formula trees, the text grammar, substitution and schema matching.

mod formula;
mod parser;
mod subst;

pub use formula::{Formula, Logic};
pub use parser::{parse_bal, parse_rl, parse_schema, ParseError};
pub use subst::{match_schema, substitute, MatchError, SubstError, Substitution};

/// Parses a ground formula in the given language.
pub fn parse(text: &str, logic: Logic) -> Result<Formula, ParseError> {
    match logic {
        Logic::Rl => parse_rl(text),
        Logic::Bal => parse_bal(text),
    }
}
