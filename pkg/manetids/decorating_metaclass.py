from abc import ABCMeta


def is_public_method(attr, value):
    return not attr.startswith('_') and callable(value)

def factory(decorator, predicate=is_public_method):
    class ApplyDecoratorMeta(ABCMeta):
        """Metaclass which applies `decorator` to every method selected by
        `predicate` in the class body.

        Subclasses are decorated too, so an override of a handler in a subclass
        keeps the behavior of the base class.

        Note:
            `decorator` must use @functools.wraps(f) for abstractmethod to work.
        """
        def __new__(cls, name, bases, dct):
            for attr, value in dct.items():
                if predicate(attr, value):
                    dct[attr] = decorator(value)
            return super(ApplyDecoratorMeta, cls).__new__(cls, name, bases, dct)
    return ApplyDecoratorMeta

def ApplyDecorator(decorator, predicate=is_public_method):
    return factory(decorator, predicate)(str('ApplyDecorator'), (), {})
