//! Platform-specific models: the PIM rewritten under a [`PlatformProfile`].

mod doc;
mod profile;
mod transform;

pub use doc::{parse_psm, PsmAutomaton, PsmDocument, PsmError, PsmIoAction, PsmVariable};
pub use profile::{
    load_profile, load_profile_file, load_profile_with, IoKind, PlatformProfile, ProfileError,
    TargetSyntax, SUBJECT,
};
pub use transform::{transform, TransformError};

/// Bundled profiles, for tests and as defaults.
pub const JAVA_PROFILE: &str = include_str!("../../../../profiles/java.profile.xml");
pub const DOTNET_PROFILE: &str = include_str!("../../../../profiles/dotnet.profile.xml");
