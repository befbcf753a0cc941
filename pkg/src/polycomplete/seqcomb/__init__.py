from .majorization import gen_majorize, majorize
from .sequences import IntSeq, Partition, seq_union
