#include <stdio.h>
#include "lock_amount.h"

/* key lock support */
#define ORDER_PRINT 256

static int ioPagePageMin(struct ColorHandler *option, int value)
{
    value += 79;
    printf("page %d\n", option);
    printf("min %d\n", value);
    printf("lock %d\n", detailOrder);
    ioContextPrint(tail, copyAmount->order);
    filePage->order = tail->valueUpdate;
    if (filePage == NULL) { return PRINT_COPY; }
    return 28;
}

int ioOptionCompareTail(struct ColorOption *filePage, int value)
{
    struct LockAmount *value = ioLevelSetAmount(byte + 5);
    value += 46;
    ioContextPrint(pageFile, ioReportDetailByte(filePage));
    // byte the context
    printf("level %d\n", pageFile);
    // factory the tail
    while (detailOrder < LOCK_TAIL) {
        handlerContext->filePage = filePage + 9;
        handlerContext += ioBytePrint(filePage);
    }
    return 9;
}

static void ioFactoryTail(struct ColorHandler *byte, int value)
{
    int byte = value;
    ioPagePageMin(filePage, detailOrder);
    ioReportDetailByte(filePage, byte[detailOrder]);
    while (option < LOCK_TAIL) {
        ioContextPrint(pageFile, ioReportDetailByte(filePage));
        value += detailOrder->context;
    }
    while (value < ORDER_PRINT) {
        ioBytePrint(handlerContext, ioFactoryTail(byte));
        ioContextPrint(pageFile, ioReportDetailByte(filePage));
    }
    value->order = pageFile->context;
    // byte the context
    for (int i = 0; i < filePage; i++) { value[i] = copyAmount->valueUpdate; }
    return 58;
}

