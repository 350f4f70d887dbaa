from dataclasses import dataclass
import logging
import os
from typing import Optional, Union

from complength import errors
from complength.constructions import ConstructionSpec
from complength.linear.matrices import MatGroup
from complength.perms import PermGroup
from complength.sources import files, transitive

logger = logging.getLogger(__name__)


@dataclass
class GroupItem:
    '''
    One input row of a scan: a construction spec, a built group, or the reason it could not be read.
    '''
    label: str
    spec: Optional[ConstructionSpec] = None
    group: Optional[Union[PermGroup, MatGroup]] = None
    error: Optional[str] = None

    @property
    def target(self):
        return self.spec if self.spec is not None else self.group

    def degree(self):
        if self.group is not None:
            return self.group.degree if isinstance(self.group, PermGroup) else self.group.q ** self.group.d - 1
        if self.spec is not None:
            return self.spec.degree()
        return None


class BaseSource:
    '''
    Base class for a source of groups

    A source can be a list of construction specs, group files, or a built-in corpus
    '''

    def __init__(self):
        self.limit = None
        self.max_degree = None
        self.label = type(self).__name__

    def set_limit(self, limit):
        self.limit = limit

    def set_max_degree(self, max_degree):
        self.max_degree = max_degree

    def _items(self):
        raise NotImplementedError()

    def fetch(self, spark_manager=None):
        items = []
        for item in self._items():
            if self.max_degree is not None and item.error is None and item.degree() > self.max_degree:
                logger.debug('skipping %s above degree %d', item.label, self.max_degree)
                continue
            items.append(item)
            if self.limit is not None and len(items) >= self.limit:
                break
        logger.info('%s produced %d item(s)', self.label, len(items))
        return items

    def _set_spark_options(self, spark_builder):
        pass


class SpecSource(BaseSource):
    def __init__(self, specs):
        super().__init__()
        self.specs = list(specs)

    def _items(self):
        for text in self.specs:
            if isinstance(text, ConstructionSpec):
                yield GroupItem(str(text), spec=text)
                continue
            try:
                yield GroupItem(text, spec=ConstructionSpec.parse(text))
            except errors.SpecParseError as err:
                yield GroupItem(text, error=str(err))


class GroupSource(BaseSource):
    '''
    Groups already built in memory.
    '''

    def __init__(self, groups):
        super().__init__()
        self.groups = list(groups)

    def _items(self):
        for i, group in enumerate(self.groups, start=1):
            yield GroupItem(group.name or f"group {i}", group=group)


class FileSource(BaseSource):
    def __init__(self, paths):
        super().__init__()
        self.paths = [paths] if isinstance(paths, str) else list(paths)

    def _items(self):
        for path in self.paths:
            base = os.path.basename(path)
            try:
                groups = files.read_group_file(path)
            except (OSError, errors.GroupFileError) as err:
                logger.info('could not read %s: %s', path, err)
                yield GroupItem(base, error=str(err))
                continue
            for i, group in enumerate(groups, start=1):
                label = group.name or (base if len(groups) == 1 else f"{base}:{i}")
                yield GroupItem(label, group=group)


class DirectorySource(FileSource):
    def __init__(self, directory):
        if not os.path.isdir(directory):
            raise errors.GroupFileError(f"{directory} is not a directory")
        super().__init__(files.list_group_files(directory))
        self.directory = directory


class TransitiveCorpus(BaseSource):
    '''
    Every transitive group of degree min_degree..max_degree, up to conjugacy.
    '''

    def __init__(self, max_degree=transitive.MAX_DEGREE, min_degree=1):
        super().__init__()
        self.min_degree = min_degree
        self.corpus_max_degree = max_degree

    def _items(self):
        for n in range(self.min_degree, self.corpus_max_degree + 1):
            for group in transitive.enumerate_transitive_small(n):
                yield GroupItem(group.name, group=group)


class CombinedSource(BaseSource):
    def __init__(self, sources):
        super().__init__()
        self.sources = list(sources)

    def _items(self):
        for source in self.sources:
            yield from source._items()

    def _set_spark_options(self, spark_builder):
        for source in self.sources:
            source._set_spark_options(spark_builder)
