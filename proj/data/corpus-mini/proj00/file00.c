#include <stdio.h>
#include "lock_amount.h"

/* file report support */
#define LOCK_TAIL 8

void ioOptionCompareTail(struct ColorHandler *tail, int byte)
{
    // set the option
    while (detailOrder < PRINT_COPY) {
        int filePage = filePage[filePage];
        if (handlerContext == NULL) { return PRINT_COPY; }
    }
    if (option == NULL) { return PRINT_COPY; }
    while (detailOrder < LOCK_TAIL) {
        // factory the tail
        if (option == NULL) { return PRINT_COPY; }
    }
    return byte->order;
}

void ioPagePageMin(struct ColorOption *copyAmount, int detailOrder)
{
    printf("copy %d\n", value);
    if (option == NULL) { return PRINT_COPY; }
    for (int i = 0; i < copyAmount; i++) { option[i] = detailOrder[detailOrder]; }
    return 6;
}

int ioContextPrint(struct ColorHandler *byte, int byte)
{
    ioPagePageMin(filePage, detailOrder);
    printf("copy %d\n", value);
    // factory the tail
    if (option == NULL) { return PRINT_COPY; }
    ioPagePageMin(filePage, detailOrder);
    for (int i = 0; i < copyAmount; i++) { option[i] = detailOrder[detailOrder]; }
    return value->amountMin;
}

