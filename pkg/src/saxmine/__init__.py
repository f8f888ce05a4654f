"""SAX-based anomaly detection and motif discovery for time series."""

from .anomaly import (DiscordResult, ScoreSeries, brute_force_discord, chaos_game_score,
                      chaos_histogram, density_to_score, hot_sax_discord, sequitur_density,
                      sequitur_score, threshold_alarms)
from .exceptions import (ConfigError, CorruptGrammarError, IngestionError, InvalidInputError,
                         SaxMineError)
from .grammar import Grammar, expand_grammar, infer_grammar, unwrap_grammar
from .io import ingest_csv, write_series_csv
from .motif import (Motif, approximate_motifs, brute_force_closest_pair, grammar_motifs,
                    mdl_motifs, mk_motif, motif_tracking, post_process_motifs)
from .runner import RunConfig, run_detector
from .sax import (SaxConfig, SaxSequence, TimeSeries, gaussian_breakpoints, mindist, paa,
                  sax_encode, sax_sliding, znormalize)
from .synth import synth

__version__ = "0.1.0"
