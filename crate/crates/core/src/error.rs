use alloc::string::String;

pub type Result<T, E = GroupError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element id {id} out of range for group of order {order}")]
    ElementOutOfRange { id: usize, order: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("inconsistent pc presentation: {0}")]
    InconsistentPresentation(String),
}
