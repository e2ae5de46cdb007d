from abc import ABC

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class Error(Exception, ABC):
    exit_code = 1

    template = 'Unexpected error'

    def __init__(self, **details):
        self.details = details
        self.type = self.__class__.__name__
        super().__init__(self.message)

    @property
    def message(self):
        return self.template.format(**self.details)

    def explain(self):
        return {
            '_message': self.message,
            '_error': self.type,
            **self.details,
        }


class ConfigError(Error, ValueError):
    exit_code = EXIT_USAGE


class DataError(Error, ValueError):
    exit_code = EXIT_DATA


class NumericError(Error, ArithmeticError):
    exit_code = EXIT_NUMERIC


class InvalidOption(ConfigError):
    template = 'Invalid value for <{option}>: {value!r} ({reason})'


class MissingOption(ConfigError):
    template = 'Option <{option}> is required when {reason}'


class InvalidFoldCount(ConfigError):
    template = 'Fold count must satisfy 2 <= k <= n. Received: k={k}, n={n}'


class MissingFile(DataError):
    template = 'File does not exist: <{path}>'


class MissingColumns(DataError):
    template = 'Missing columns. Expected: <{expected}>, received: <{received}>'


class UnexpectedColumns(DataError):
    template = 'Unexpected columns. Received: <{received}>'


class MalformedRow(DataError):
    template = 'Malformed row at line {line} of <{path}>: {reason}'


class EmptyText(DataError):
    template = 'Empty question text at line {line} of <{path}>'


class EmptyLabel(DataError):
    template = 'Empty label at line {line} of <{path}>'


class EmptyCorpus(DataError):
    template = 'No data rows found in <{path}>'


class UnknownLabel(DataError):
    template = 'Label is not a member of the label set. Received: <{label}>'


class LengthMismatch(DataError):
    template = 'Lengths not equal. Expected <{expected}>, received: <{received}>'


class SingleClass(DataError):
    template = 'At least two distinct labels are required. Received: <{labels}>'


class EmptyVocabulary(DataError):
    template = 'Cannot build a vocabulary: every token list is empty'


class InvalidRule(DataError):
    template = 'Invalid substitution rule <{pattern}> -> <{replacement}>: {reason}'


class MalformedHeader(DataError):
    template = 'Malformed header in <{path}>: {reason}'


class DuplicateWord(DataError):
    template = 'Duplicate word <{word}> at line {line} of <{path}>'


class UnknownModelVersion(DataError):
    template = 'Unsupported model file <{path}>: format={format!r}, version={version!r}'


class CorruptModel(DataError):
    template = 'Corrupt model file <{path}>: {reason}'


class NonFiniteValues(NumericError):
    template = 'Matrix contains NaN or Inf values ({where})'


class RankOutOfRange(NumericError):
    template = 'Rank must satisfy 1 <= k <= {limit}. Received: <{k}>'


class ShapeMismatch(NumericError):
    template = 'Shapes not compatible. Expected <{expected}>, received: <{received}>'


class ValueOutOfRange(NumericError):
    template = 'Value <{name}={value}> is outside of {bounds}'


class DegenerateCorpus(NumericError):
    template = 'Degenerate corpus: {reason}'


class ConfigFileError(DataError):
    template = 'Cannot read config file <{path}>: {reason}'
