from .idx import RawExample, IDXFormatError, IDXLengthError, read_idx, load_idx, load_mnist, fetch_mnist
from .mnist import EncodedExample, ZeroNormError, InsufficientDataError, downsample_8x8, encode, encode_image, distill, stack_examples, pooling_matrix
from .shard import ShardPlan, shard
