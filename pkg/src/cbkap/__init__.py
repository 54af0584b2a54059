"""Colored Burau key agreement, the KTT linear attack, and its defense."""
from .cbraid import (BraidLetter, BraidWord, EState, Permutation, TauVector, cb_generator_matrix,
                     e_commutes, e_mul_letter, e_mul_word, pi_of_word, perm_compose)
from .errors import (CbkapError, EvaluationError, KeygenError, ParseError, ProtocolError,
                     SetupError, SingularMatrixError, UsageError)
from .ff import GF, FieldElement
from .protocol import (ParamsConfig, PrivateKey, PublicKey, PublicParams, SharedSecret, keygen,
                       public_key, shared_secret, ttp_setup)
from .codec import deserialize, serialize

__version__ = "0.1.0"
