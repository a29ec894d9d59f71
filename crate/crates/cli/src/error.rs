use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Math(#[from] torfol::Error),
}

impl CliError {
    /// 2 for anything wrong with the input, 3 when the step budget ran out.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(torfol::Error::Resource { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
