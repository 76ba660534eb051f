from concurrent.futures import ThreadPoolExecutor
from tqdm import tqdm

def ordered_map(func, items, workers=None, progress=False, desc=None):
    """Yield (item, func(item)) in submission order using a thread pool."""
    items = list(items)
    if workers == 1:
        results = map(func, items)
        if progress:
            results = tqdm(results, total=len(items), desc=desc, smoothing=0.05)
        for item, result in zip(items, results):
            yield item, result
        return
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = executor.map(func, items)
        if progress:
            results = tqdm(results, total=len(items), desc=desc, smoothing=0.05)
        for item, result in zip(items, results):
            yield item, result
